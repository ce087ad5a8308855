use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::lu::lu_factor;
use crate::matrix::{IntervalMatrix, IntervalVector, RealMatrix, RealVector};
use crate::round::{add_down, add_up, mul_down, sub_up};

/// Whether a system is as given or has been preconditioned so that the
/// matrix midpoint is exactly the identity. Several solvers require the
/// latter; the flag makes that requirement checkable instead of implicit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemForm {
    Raw,
    MidpointIdentity,
}

/// Square interval system A x = b.
#[derive(Clone, Debug)]
pub struct IntervalLinearSystem {
    a: IntervalMatrix,
    b: IntervalVector,
    form: SystemForm,
}

impl IntervalLinearSystem {
    pub fn new(a: IntervalMatrix, b: IntervalVector) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NonSquare {
                rows: a.n_rows(),
                cols: a.n_cols(),
            });
        }
        if a.n_rows() == 0 {
            return Err(Error::Dimension("empty system".into()));
        }
        if b.len() != a.n_rows() {
            return Err(Error::Dimension(format!(
                "matrix is {0}x{0} but right-hand side has {1} entries",
                a.n_rows(),
                b.len()
            )));
        }
        Ok(IntervalLinearSystem {
            a,
            b,
            form: SystemForm::Raw,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.a.n_rows()
    }

    #[inline]
    pub fn a(&self) -> &IntervalMatrix {
        &self.a
    }

    #[inline]
    pub fn b(&self) -> &IntervalVector {
        &self.b
    }

    #[inline]
    pub fn form(&self) -> SystemForm {
        self.form
    }
}

/// Approximate inverse of the midpoint matrix.
pub fn approx_mid_inverse(sys: &IntervalLinearSystem) -> Result<RealMatrix> {
    lu_factor(&sys.a().mid())?.inverse()
}

/// Precondition by the approximate midpoint inverse R and relax the
/// result outward so the new matrix has midpoint exactly the identity:
/// diagonal entries become [1-r, 1+r], off-diagonal [-m, m]. The
/// relaxation only widens, so the new system's solution set contains
/// the original one. Fails if some relaxed diagonal radius reaches 1,
/// since the diagonal then contains zero and no downstream method can
/// use the system.
pub fn precondition_relax(sys: &IntervalLinearSystem) -> Result<IntervalLinearSystem> {
    let n = sys.n();
    let r = approx_mid_inverse(sys)?;
    let c = sys.a().premul_real(&r)?;
    let b = r.matvec_interval(sys.b())?;

    let mut rows: Vec<Vec<Interval>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let e = &c[(i, j)];
            if i == j {
                let m = sub_up(1.0, e.lo()).max(sub_up(e.hi(), 1.0));
                let hi = add_up(1.0, m);
                if !hi.is_finite() {
                    return Err(Error::Overflow);
                }
                if hi >= 2.0 {
                    return Err(Error::Domain(format!(
                        "relaxed diagonal radius at row {i} reaches 1; \
                         the interval matrix is too wide to precondition"
                    )));
                }
                // hi is in [1, 2), so hi - 1 and 1 - rad are both exact
                let rad = hi - 1.0;
                row.push(Interval::new(1.0 - rad, hi)?);
            } else {
                let m = e.mag();
                row.push(Interval::new(-m, m)?);
            }
        }
        rows.push(row);
    }
    let a = IntervalMatrix::from_rows(rows)?;
    debug_assert!((0..n).all(|i| (0..n).all(|j| {
        let want = if i == j { 1.0 } else { 0.0 };
        a[(i, j)].mid() == want
    })));
    Ok(IntervalLinearSystem {
        a,
        b,
        form: SystemForm::MidpointIdentity,
    })
}

/// Certificate that every point matrix inside A is nonsingular. The
/// witness v solves <A> v = 1 approximately; `verified` is true only if
/// v > 0 and a down-rounded evaluation of <A> v stays strictly positive,
/// which makes <A> an M-matrix and A strongly regular. `verified ==
/// false` means inconclusive, not singular.
pub fn certify_regular(sys: &IntervalLinearSystem) -> RegularityCertificate {
    let comp = match sys.a().comparison_matrix() {
        Ok(c) => c,
        Err(_) => {
            return RegularityCertificate {
                witness: Vec::new(),
                verified: false,
            }
        }
    };
    let n = sys.n();
    let witness = match lu_factor(&comp).and_then(|f| f.solve(&vec![1.0; n])) {
        Ok(v) => v,
        Err(_) => {
            return RegularityCertificate {
                witness: Vec::new(),
                verified: false,
            }
        }
    };
    if !witness.iter().all(|&v| v.is_finite() && v > 0.0) {
        return RegularityCertificate {
            witness,
            verified: false,
        };
    }
    // comparison entries are exact endpoint picks, so a down-rounded
    // product is a true lower bound on <A> v
    let mut verified = true;
    for i in 0..n {
        let mut acc = 0.0f64;
        for j in 0..n {
            acc = add_down(acc, mul_down(comp[(i, j)], witness[j]));
        }
        if !(acc > 0.0) {
            verified = false;
            break;
        }
    }
    RegularityCertificate { witness, verified }
}

/// Outcome of `certify_regular`.
#[derive(Clone, Debug)]
pub struct RegularityCertificate {
    pub witness: RealVector,
    pub verified: bool,
}
