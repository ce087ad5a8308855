use crate::classic::{gauss_seidel_step, iterate, StoppingRule};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linsys::{IntervalLinearSystem, SystemForm};
use crate::matrix::{IntervalVector, RealVector};
use crate::round::{add_down, add_up, div_down, mul_down, mul_up, sub_down, sub_up};
use crate::verified::{assemble_u, assemble_ud, UDBounds, UdMode, UdSource};

/// Everything a single operator row reads: the system, the current
/// enclosure x (which must contain the solution set), and the u/d/gamma
/// bundle with gamma_i in [0, alpha_i].
pub struct OperatorInputs<'a> {
    pub sys: &'a IntervalLinearSystem,
    pub x: &'a IntervalVector,
    pub ud: &'a UDBounds,
}

fn require_centered(sys: &IntervalLinearSystem, what: &str) -> Result<()> {
    if sys.form() != SystemForm::MidpointIdentity {
        return Err(Error::Domain(format!(
            "{what} needs a preconditioned system; run precondition_relax first"
        )));
    }
    Ok(())
}

/// Lower bound on u from the truncated series mag(b) + D(mag(b) + D mag(b)),
/// D = rad(A). Every operation rounds down and all quantities are
/// nonnegative, so the result never exceeds the true u.
pub fn cheap_lower_bound_u(sys: &IntervalLinearSystem) -> Result<RealVector> {
    cheap_u_impl(sys, &mut 0)
}

/// Same bound plus the number of scalar float operations spent, for cost
/// profiling.
pub fn cheap_lower_bound_u_counted(sys: &IntervalLinearSystem) -> Result<(RealVector, usize)> {
    let mut ops = 0;
    let v = cheap_u_impl(sys, &mut ops)?;
    Ok((v, ops))
}

fn cheap_u_impl(sys: &IntervalLinearSystem, ops: &mut usize) -> Result<RealVector> {
    require_centered(sys, "cheap u bound")?;
    let n = sys.n();
    let rad = sys.a().rad();
    let magb = sys.b().mag();

    let matvec_down = |v: &[f64], ops: &mut usize| -> RealVector {
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = 0.0f64;
            for j in 0..n {
                acc = add_down(acc, mul_down(rad[(i, j)], v[j]));
                *ops += 2;
            }
            out.push(acc);
        }
        out
    };

    let t1 = matvec_down(&magb, ops);
    let inner: RealVector = (0..n).map(|i| add_down(magb[i], t1[i])).collect();
    let t2 = matvec_down(&inner, ops);
    let out: RealVector = (0..n).map(|i| add_down(magb[i], t2[i])).collect();
    *ops += 2 * n;
    if !out.iter().all(|v| v.is_finite()) {
        return Err(Error::Overflow);
    }
    Ok(out)
}

/// Lower bound on d = diag(<A>^-1) from d_i >= hi(a_ii) / (1 - (D^2)_ii),
/// D = rad(A): the diagonal of D^2 is rounded down, the denominator up,
/// the quotient down.
pub fn cheap_lower_bound_d(sys: &IntervalLinearSystem) -> Result<RealVector> {
    cheap_d_impl(sys, &mut 0)
}

/// Same bound plus the scalar float operation count.
pub fn cheap_lower_bound_d_counted(sys: &IntervalLinearSystem) -> Result<(RealVector, usize)> {
    let mut ops = 0;
    let v = cheap_d_impl(sys, &mut ops)?;
    Ok((v, ops))
}

fn cheap_d_impl(sys: &IntervalLinearSystem, ops: &mut usize) -> Result<RealVector> {
    require_centered(sys, "cheap d bound")?;
    let n = sys.n();
    let rad = sys.a().rad();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut sq = 0.0f64;
        for k in 0..n {
            sq = add_down(sq, mul_down(rad[(i, k)], rad[(k, i)]));
            *ops += 2;
        }
        let den = sub_up(1.0, sq);
        *ops += 2;
        if den <= 0.0 {
            return Err(Error::DegenerateBound { row: i });
        }
        out.push(div_down(sys.a()[(i, i)].hi(), den));
    }
    Ok(out)
}

/// One row of the interval operator
/// (b_i - Σ_{j≠i} a_ij x_j + [γ_i, -γ_i] u_i) / (a_ii + γ_i [-1,1]),
/// evaluated without improper intermediates: the widening
/// w = Σ_{j≠i} rad(a_ij) mag(x_j) rounds up, the shrink g = γ_i u_lo_i
/// rounds down, and w - g is allowed to go negative (the numerator then
/// lies strictly inside b_i, which the underlying inclusion licenses).
/// The result is intersected with x_i.
pub fn new_operator_row(inputs: &OperatorInputs<'_>, i: usize) -> Result<Interval> {
    let sys = inputs.sys;
    let x = inputs.x;
    let ud = inputs.ud;
    let n = sys.n();
    if x.len() != n || ud.u_enc().len() != n {
        return Err(Error::Dimension(format!(
            "operator row: system is {n}, x is {}, ud is {}",
            x.len(),
            ud.u_enc().len()
        )));
    }
    if i >= n {
        return Err(Error::Dimension(format!("operator row {i} of {n}")));
    }

    let gamma = ud.gamma()[i];
    let mut w = 0.0f64;
    for j in 0..n {
        if j != i {
            w = add_up(w, mul_up(sys.a()[(i, j)].rad(), x[j].mag()));
        }
    }
    let g = mul_down(gamma, ud.u_enc()[i].lo());

    let b = &sys.b()[i];
    let num = Interval::new(
        add_down(b.lo(), sub_down(g, w)),
        add_up(b.hi(), sub_up(w, g)),
    )?;
    let a = &sys.a()[(i, i)];
    let den = Interval::new(sub_down(a.lo(), gamma), add_up(a.hi(), gamma))?;
    if den.lo() <= 0.0 {
        return Err(Error::Domain(format!(
            "operator denominator at row {i} is not positive; gamma {gamma} too large"
        )));
    }
    num.div(&den)?
        .intersect(&x[i])
        .ok_or(Error::EmptyIntersection { row: i })
}

fn operator_all_rows(
    sys: &IntervalLinearSystem,
    x: &IntervalVector,
    ud: &UDBounds,
) -> Result<IntervalVector> {
    let inputs = OperatorInputs { sys, x, ud };
    let rows = (0..sys.n())
        .map(|i| new_operator_row(&inputs, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntervalVector::new(rows))
}

/// The magnitude method: verified u, d bound per `mode`, one operator
/// pass over the box [-u_hi, u_hi].
pub fn magnitude_enclosure(sys: &IntervalLinearSystem, mode: UdMode) -> Result<IntervalVector> {
    require_centered(sys, "magnitude method")?;
    let ud = assemble_ud(sys, mode)?;
    let x0 = IntervalVector::symmetric_box(&ud.u_hi())?;
    operator_all_rows(sys, &x0, &ud)
}

/// The magnitude method with gamma forced to 0, which skips the d bound
/// entirely and reproduces the limit Gauss-Seidel enclosure.
pub fn magnitude_enclosure_gamma0(sys: &IntervalLinearSystem) -> Result<IntervalVector> {
    require_centered(sys, "magnitude method")?;
    let (_, u_enc) = assemble_u(sys)?;
    let n = u_enc.len();
    // d is unused when gamma = 0; 1 is still a valid lower bound since
    // diag(<A>^-1) >= 1 for a centered system
    let ud = UDBounds::from_parts(
        u_enc,
        vec![1.0; n],
        None,
        vec![0.0; n],
        UdSource::CheapBound,
    );
    let x0 = IntervalVector::symmetric_box(&ud.u_hi())?;
    operator_all_rows(sys, &x0, &ud)
}

/// Hybrid recipe: Gauss-Seidel sweeps from the box [-u_hi, u_hi], then a
/// single operator pass on the result. The pass shrinks with the cheap
/// lower bound on u rather than the verified one, so it stays valid even
/// though only the starting box came from the verified solve; the result
/// is therefore a bit wider than `magnitude_enclosure` but still inside
/// the plain Gauss-Seidel enclosure.
pub fn gs_then_operator(sys: &IntervalLinearSystem, gs_iters: usize) -> Result<IntervalVector> {
    require_centered(sys, "hybrid method")?;
    let ud = assemble_ud(sys, UdMode::Cheap)?;
    let u_cheap = cheap_lower_bound_u(sys)?;
    let hybrid_u = IntervalVector::new(
        ud.u_enc()
            .iter()
            .zip(&u_cheap)
            .map(|(enc, &lo)| Interval::new(lo.min(enc.lo()), enc.hi()))
            .collect::<Result<Vec<_>>>()?,
    );
    let ud = UDBounds::from_parts(
        hybrid_u,
        ud.d_lo().clone(),
        None,
        ud.gamma().clone(),
        UdSource::CheapBound,
    );
    let x0 = IntervalVector::symmetric_box(&ud.u_hi())?;
    let run = iterate(
        sys,
        gauss_seidel_step,
        x0,
        StoppingRule {
            tol: 0.0,
            max_iter: gs_iters,
        },
    )?;
    operator_all_rows(sys, &run.enclosure, &ud)
}
