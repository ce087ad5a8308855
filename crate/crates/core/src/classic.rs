use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linsys::IntervalLinearSystem;
use crate::matrix::IntervalVector;
use crate::round::{add_up, div_down, div_up, sub_down, sub_up};
use crate::verified::{UDBounds, UdSource};

/// Tolerance-or-iteration-cap rule for `iterate`. An iteration stops
/// once every endpoint moves by at most `tol * (1 + |endpoint|)`.
#[derive(Clone, Copy, Debug)]
pub struct StoppingRule {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for StoppingRule {
    fn default() -> Self {
        StoppingRule {
            tol: 1e-12,
            max_iter: 100,
        }
    }
}

/// Final iterate plus how the iteration ended.
#[derive(Clone, Debug)]
pub struct IterationResult {
    pub enclosure: IntervalVector,
    pub iterations: usize,
    pub converged: bool,
}

/// One Krawczyk sweep: (b + (I - A) x) ∩ x, evaluated row by row with
/// outward rounding. Sound for any x containing the solution set.
pub fn krawczyk_step(sys: &IntervalLinearSystem, x: &IntervalVector) -> Result<IntervalVector> {
    let n = sys.n();
    if x.len() != n {
        return Err(Error::Dimension(format!(
            "krawczyk step: system is {n}, box is {}",
            x.len()
        )));
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut sum = Interval::ZERO;
        for j in 0..n {
            let a = &sys.a()[(i, j)];
            let target = if i == j { 1.0 } else { 0.0 };
            let residual_entry = Interval::new(sub_down(target, a.hi()), sub_up(target, a.lo()))?;
            sum = sum.add(&residual_entry.mul(&x[j])?)?;
        }
        let row = sys.b()[i].add(&sum)?;
        match row.intersect(&x[i]) {
            Some(v) => out.push(v),
            None => return Err(Error::EmptyIntersection { row: i }),
        }
    }
    Ok(IntervalVector::new(out))
}

/// One Gauss-Seidel sweep in the whole-vector (Jacobi-style) form:
/// entrywise (b_i - Σ_{j≠i} a_ij x_j) / a_ii ∩ x_i.
pub fn gauss_seidel_step(
    sys: &IntervalLinearSystem,
    x: &IntervalVector,
) -> Result<IntervalVector> {
    let n = sys.n();
    if x.len() != n {
        return Err(Error::Dimension(format!(
            "gauss-seidel step: system is {n}, box is {}",
            x.len()
        )));
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let diag = &sys.a()[(i, i)];
        if diag.contains_zero() {
            return Err(Error::Domain(format!(
                "diagonal interval at row {i} contains zero"
            )));
        }
        let mut sum = Interval::ZERO;
        for j in 0..n {
            if j != i {
                sum = sum.add(&sys.a()[(i, j)].mul(&x[j])?)?;
            }
        }
        let num = sys.b()[i].sub(&sum)?;
        let row = num.div(diag)?;
        match row.intersect(&x[i]) {
            Some(v) => out.push(v),
            None => return Err(Error::EmptyIntersection { row: i }),
        }
    }
    Ok(IntervalVector::new(out))
}

/// Apply `step` repeatedly from `x0`, intersecting each result with its
/// predecessor so the sequence is nested, until the stopping rule fires.
pub fn iterate<F>(
    sys: &IntervalLinearSystem,
    step: F,
    x0: IntervalVector,
    stop: StoppingRule,
) -> Result<IterationResult>
where
    F: Fn(&IntervalLinearSystem, &IntervalVector) -> Result<IntervalVector>,
{
    let mut x = x0;
    for k in 1..=stop.max_iter {
        let stepped = step(sys, &x)?;
        let next = match stepped.intersect(&x) {
            Some(v) => v,
            None => return Err(Error::EmptyIntersection { row: 0 }),
        };
        let settled = next.iter().zip(x.iter()).all(|(new, old)| {
            (new.lo() - old.lo()).abs() <= stop.tol * (1.0 + old.lo().abs())
                && (new.hi() - old.hi()).abs() <= stop.tol * (1.0 + old.hi().abs())
        });
        x = next;
        if settled {
            return Ok(IterationResult {
                enclosure: x,
                iterations: k,
                converged: true,
            });
        }
    }
    Ok(IterationResult {
        enclosure: x,
        iterations: stop.max_iter,
        converged: false,
    })
}

/// Closed-form Gauss-Seidel limit. Starting from the symmetric box
/// [-u_hi, u_hi], one sweep already evaluates the limit formula
/// (b_i + Σ_{j≠i} mag(a_ij) u_j [-1,1]) / a_ii, and the sweep's final
/// intersection clips the result back into the box.
pub fn gs_limit(sys: &IntervalLinearSystem, ud: &UDBounds) -> Result<IntervalVector> {
    let x0 = IntervalVector::symmetric_box(&ud.u_hi())?;
    gauss_seidel_step(sys, &x0)
}

/// Closed-form Krawczyk limit b + rad(A) u [-1,1], by the same
/// one-sweep-from-the-box argument.
pub fn krawczyk_limit(sys: &IntervalLinearSystem, ud: &UDBounds) -> Result<IntervalVector> {
    let x0 = IntervalVector::symmetric_box(&ud.u_hi())?;
    krawczyk_step(sys, &x0)
}

/// Hull formula (b_i + (u_i/d_i - mag(b_i))[-1,1]) / (a_ii + α_i[-1,1])
/// evaluated outward: the widening term uses u_hi/d_lo, the denominator
/// uses the upper end of an enclosure of α_i = mig(a_ii) - 1/d_i. Needs
/// two-sided u and d enclosures, hence source = VerifiedExact.
pub fn ning_kearfott_hull(sys: &IntervalLinearSystem, ud: &UDBounds) -> Result<IntervalVector> {
    if ud.source() != UdSource::VerifiedExact {
        return Err(Error::Domain(
            "hull formula needs verified two-sided u and d enclosures".into(),
        ));
    }
    let d_enc = ud
        .d_enc()
        .ok_or_else(|| Error::Domain("hull formula needs a two-sided d enclosure".into()))?;
    let n = sys.n();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = &sys.a()[(i, i)];
        let b = &sys.b()[i];
        let u_hi = ud.u_enc()[i].hi();
        let d_lo = ud.d_lo()[i];
        let d_hi = d_enc[i].hi();
        if !(d_lo > 0.0) {
            return Err(Error::Domain(format!(
                "nonpositive inverse-diagonal bound {d_lo} at row {i}"
            )));
        }
        let tau = sub_up(div_up(u_hi, d_lo), b.mag());
        if tau < 0.0 {
            return Err(Error::Domain(format!(
                "negative hull widening term at row {i}; u/d bounds are inconsistent"
            )));
        }
        let alpha_hi = sub_up(a.mig(), div_down(1.0, d_hi));
        let den = Interval::new(sub_down(a.lo(), alpha_hi), add_up(a.hi(), alpha_hi))?;
        if den.lo() <= 0.0 {
            return Err(Error::Domain(format!(
                "hull denominator at row {i} is not positive"
            )));
        }
        let num = Interval::new(sub_down(b.lo(), tau), add_up(b.hi(), tau))?;
        let q = num.div(&den)?;
        let clip = Interval::new(-u_hi, u_hi)?;
        match q.intersect(&clip) {
            Some(v) => out.push(v),
            None => return Err(Error::EmptyIntersection { row: i }),
        }
    }
    Ok(IntervalVector::new(out))
}
