use crate::error::{Error, Result};
use crate::matrix::{inf_norm, RealMatrix, RealVector};

/// LU factorization with partial pivoting, stored packed (L below the
/// diagonal with unit diagonal implied, U on and above).
#[derive(Clone, Debug)]
pub struct LuFactors {
    lu: RealMatrix,
    perm: Vec<usize>,
}

/// Factor a square matrix. Pivots smaller than `n * eps * ||A||_inf`
/// are treated as numerically singular; callers see that as a hard
/// error because every downstream bound needs a usable approximate
/// inverse.
pub fn lu_factor(a: &RealMatrix) -> Result<LuFactors> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.n_rows(),
            cols: a.n_cols(),
        });
    }
    let n = a.n_rows();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let tol = n as f64 * f64::EPSILON * inf_norm(a);

    for k in 0..n {
        let mut piv = k;
        let mut piv_val = lu[(k, k)].abs();
        for i in k + 1..n {
            let v = lu[(i, k)].abs();
            if v > piv_val {
                piv = i;
                piv_val = v;
            }
        }
        if !(piv_val > tol) || !piv_val.is_finite() {
            return Err(Error::SingularMidpoint);
        }
        if piv != k {
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(piv, j)];
                lu[(piv, j)] = tmp;
            }
            perm.swap(k, piv);
        }
        for i in k + 1..n {
            let m = lu[(i, k)] / lu[(k, k)];
            lu[(i, k)] = m;
            for j in k + 1..n {
                lu[(i, j)] -= m * lu[(k, j)];
            }
        }
    }
    Ok(LuFactors { lu, perm })
}

impl LuFactors {
    pub fn n(&self) -> usize {
        self.lu.n_rows()
    }

    /// Solve A x = b approximately via the stored factors.
    pub fn solve(&self, b: &[f64]) -> Result<RealVector> {
        let n = self.n();
        if b.len() != n {
            return Err(Error::Dimension(format!(
                "lu solve: {} unknowns, {} rhs entries",
                n,
                b.len()
            )));
        }
        let mut x: RealVector = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for j in 0..i {
                x[i] -= self.lu[(i, j)] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] -= self.lu[(i, j)] * x[j];
            }
            x[i] /= self.lu[(i, i)];
        }
        Ok(x)
    }

    /// Approximate inverse, one column solve per unit vector.
    pub fn inverse(&self) -> Result<RealMatrix> {
        let n = self.n();
        let mut inv = RealMatrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            let col = self.solve(&e)?;
            e[j] = 0.0;
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        Ok(inv)
    }
}
