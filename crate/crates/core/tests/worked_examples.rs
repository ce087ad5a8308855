//! End-to-end regression of two small dense systems through the full
//! pipeline (precondition, certify, bounds, every enclosure method).
//! Expected values were frozen from an independent double-precision
//! oracle; the loose published 4-digit targets get 5e-4, everything
//! else is pinned to 1e-9.

use intlin::{
    assemble_ud, certify_regular, cheap_lower_bound_d, cheap_lower_bound_u, gauss_seidel_step,
    gs_limit, gs_then_operator, iterate, krawczyk_limit, magnitude_enclosure,
    magnitude_enclosure_gamma0, ning_kearfott_hull, precondition_relax, Interval,
    IntervalLinearSystem, IntervalMatrix, IntervalVector, StoppingRule, UdMode,
};

fn iv(lo: f64, hi: f64) -> Interval {
    Interval::new(lo, hi).unwrap()
}

fn system(rows: Vec<Vec<(f64, f64)>>, b: Vec<(f64, f64)>) -> IntervalLinearSystem {
    let a = IntervalMatrix::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(|(lo, hi)| iv(lo, hi)).collect())
            .collect(),
    )
    .unwrap();
    let b = IntervalVector::new(b.into_iter().map(|(lo, hi)| iv(lo, hi)).collect());
    IntervalLinearSystem::new(a, b).unwrap()
}

/// 3x3 instance whose published analysis lists the limit enclosures,
/// cheap bounds, and the post-operator box.
fn example1() -> IntervalLinearSystem {
    system(
        vec![
            vec![(-10.0, -8.0), (3.0, 5.0), (8.0, 10.0)],
            vec![(-7.0, -5.0), (0.0, 2.0), (-8.0, -6.0)],
            vec![(4.0, 6.0), (7.0, 9.0), (-7.0, -5.0)],
        ],
        vec![(3.0, 5.0), (6.0, 8.0), (5.0, 7.0)],
    )
}

/// 2x2 instance comparing the iterative, magnitude, and hull enclosures.
fn example2() -> IntervalLinearSystem {
    system(
        vec![
            vec![(-4.0, -2.0), (8.0, 10.0)],
            vec![(2.0, 4.0), (4.0, 6.0)],
        ],
        vec![(-6.0, -4.0), (-10.0, -8.0)],
    )
}

fn assert_vec_near(label: &str, got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len(), "{label}: length mismatch");
    for (i, (g, w)) in got.iter().zip(want).enumerate() {
        assert!(
            (g - w).abs() <= tol,
            "{label}[{i}]: got {g}, want {w} (tol {tol})"
        );
    }
}

fn assert_box_near(label: &str, got: &IntervalVector, want: &[(f64, f64)], tol: f64) {
    assert_eq!(got.len(), want.len(), "{label}: length mismatch");
    for (i, (g, (lo, hi))) in got.iter().zip(want).enumerate() {
        assert!(
            (g.lo() - lo).abs() <= tol && (g.hi() - hi).abs() <= tol,
            "{label}[{i}]: got {g}, want [{lo}, {hi}] (tol {tol})"
        );
    }
}

const TIGHT: f64 = 1e-9;
const PRINTED: f64 = 5e-4;

#[test]
fn example1_full_pipeline() {
    let sys = precondition_relax(&example1()).unwrap();
    assert!(certify_regular(&sys).verified);

    let cheap = assemble_ud(&sys, UdMode::Cheap).unwrap();
    let exact = assemble_ud(&sys, UdMode::Exact).unwrap();

    let u = [1.2812851887996397, 1.5636779594895776, 1.082011516390366];
    let d = [1.272727272727273, 1.2935916542473924, 1.2384500745156484];
    assert_vec_near("u lo", &cheap.u_enc().iter().map(|x| x.lo()).collect::<Vec<_>>(), &u, TIGHT);
    assert_vec_near("u hi", &cheap.u_hi(), &u, TIGHT);
    assert_vec_near(
        "d lo",
        &exact.d_enc().unwrap().iter().map(|x| x.lo()).collect::<Vec<_>>(),
        &d,
        TIGHT,
    );

    // published 4-digit values
    assert_vec_near(
        "cheap u",
        &cheap_lower_bound_u(&sys).unwrap(),
        &[1.1633, 1.4367, 0.9788],
        PRINTED,
    );
    assert_vec_near(
        "cheap d",
        &cheap_lower_bound_d(&sys).unwrap(),
        &[1.2343, 1.2536, 1.2030],
        PRINTED,
    );
    assert_vec_near("gamma", cheap.gamma(), &[0.0387, 0.0396, 0.0366], PRINTED);
    assert_vec_near("alpha", exact.gamma(), &[0.0632, 0.0643, 0.0604], PRINTED);

    // oracle pins for the same quantities
    assert_vec_near(
        "cheap u",
        &cheap_lower_bound_u(&sys).unwrap(),
        &[1.1632900054826836, 1.4366558222576629, 0.9788463287908415],
        TIGHT,
    );
    assert_vec_near(
        "cheap d",
        &cheap_lower_bound_d(&sys).unwrap(),
        &[1.2342858563384833, 1.25361120648521, 1.202996693768155],
        TIGHT,
    );
    assert_vec_near(
        "gamma",
        cheap.gamma(),
        &[0.038700126885661934, 0.03962903967419862, 0.036620307044409994],
        TIGHT,
    );
    assert_vec_near(
        "alpha",
        exact.gamma(),
        &[0.06317093311312982, 0.06428305053141925, 0.06041689645955006],
        TIGHT,
    );

    let gs = gs_limit(&sys, &cheap).unwrap();
    assert_box_near(
        "gs limit",
        &gs,
        &[(-1.2813, 0.0167), (0.1849, 1.5637), (-1.0821, 0.0887)],
        PRINTED,
    );
    assert_box_near(
        "gs limit",
        &gs,
        &[
            (-1.2812851887996397, 0.01669374911092387),
            (0.18496487860622782, 1.5636779594895773),
            (-1.082011516390366, 0.08867183989179334),
        ],
        TIGHT,
    );

    let k = krawczyk_limit(&sys, &cheap).unwrap();
    assert_box_near(
        "krawczyk limit",
        &k,
        &[
            (-1.2812851887996397, 0.20779220779220792),
            (-0.03931792645902399, 1.5636779594895773),
            (-1.082011516390366, 0.21991407625824388),
        ],
        TIGHT,
    );
    assert!(gs.is_subset(&k));

    let hull = ning_kearfott_hull(&sys, &exact).unwrap();
    assert_box_near(
        "hull",
        &hull,
        &[(-1.2813, -0.0549), (0.2571, 1.5637), (-1.0821, 0.0144)],
        PRINTED,
    );
    assert_box_near(
        "hull",
        &hull,
        &[
            (-1.2812851887996397, -0.05498615631223601),
            (0.25719868343006014, 1.5636779594895776),
            (-1.082011516390366, 0.014346877418989596),
        ],
        TIGHT,
    );

    let mag = magnitude_enclosure(&sys, UdMode::Cheap).unwrap();
    assert_box_near(
        "magnitude",
        &mag,
        &[
            (-1.2812851887996397, -0.02976498468487425),
            (0.23040850351427514, 1.5636779594895773),
            (-1.082011516390366, 0.044911146205433045),
        ],
        TIGHT,
    );
    assert!(mag.is_subset(&gs));

    // four sweeps then one operator pass; published to 4 digits with a
    // looser tolerance since the source's starting box is not pinned
    let op = gs_then_operator(&sys, 4).unwrap();
    assert_box_near(
        "post-operator",
        &op,
        &[(-1.2820, -0.0258), (0.2261, 1.5641), (-1.0822, 0.0497)],
        2e-3,
    );
    assert_box_near(
        "post-operator",
        &op,
        &[
            (-1.2812851887996397, -0.025927052805439763),
            (0.22622173946639412, 1.5636779594895773),
            (-1.082011516390366, 0.049455996552649664),
        ],
        TIGHT,
    );
}

#[test]
fn example2_full_pipeline() {
    let sys = precondition_relax(&example2()).unwrap();
    assert!(certify_regular(&sys).verified);

    let cheap = assemble_ud(&sys, UdMode::Cheap).unwrap();
    let exact = assemble_ud(&sys, UdMode::Exact).unwrap();

    // u = (38/11, 21/11), d = (18/11, 14/11) exactly
    assert_vec_near("u", &cheap.u_hi(), &[38.0 / 11.0, 21.0 / 11.0], TIGHT);
    assert_vec_near(
        "d",
        &exact.d_lo().to_vec(),
        &[18.0 / 11.0, 14.0 / 11.0],
        TIGHT,
    );
    assert_vec_near(
        "alpha",
        exact.gamma(),
        &[1.0 / 18.0, 1.0 / 14.0],
        TIGHT,
    );
    assert_vec_near(
        "cheap u",
        &cheap_lower_bound_u(&sys).unwrap(),
        &[3.0491307634164775, 1.7353417557499191],
        TIGHT,
    );
    assert_vec_near(
        "cheap d",
        &cheap_lower_bound_d(&sys).unwrap(),
        &[84.0 / 53.0, 168.0 / 137.0],
        TIGHT,
    );

    let gs = gs_limit(&sys, &cheap).unwrap();
    assert_box_near(
        "gs limit",
        &gs,
        &[
            (-3.4545454545454546, -0.2727272727272718),
            (-1.9090909090909094, -0.318181818181818),
        ],
        TIGHT,
    );

    let mag = magnitude_enclosure(&sys, UdMode::Cheap).unwrap();
    assert_box_near(
        "magnitude",
        &mag,
        &[(-3.4546, -0.3557), (-1.9091, -0.3741)],
        PRINTED,
    );
    assert_box_near(
        "magnitude",
        &mag,
        &[
            (-3.4545454545454546, -0.3557312252964418),
            (-1.9090909090909094, -0.3741434444952032),
        ],
        TIGHT,
    );

    let hull = ning_kearfott_hull(&sys, &exact).unwrap();
    assert_box_near(
        "hull",
        &hull,
        &[(-3.4546, -0.3999), (-1.9091, -0.4117)],
        PRINTED,
    );
    assert_box_near(
        "hull",
        &hull,
        &[(-3.4545454545454546, -0.4), (-1.9090909090909094, -0.4117647058823529)],
        TIGHT,
    );

    // the published iterative run starts from that source's own verified
    // box and stops after three sweeps
    let x0 = IntervalVector::new(vec![iv(-3.4985, 0.8318), iv(-1.9279, -0.0721)]);
    let run = iterate(&sys, gauss_seidel_step, x0, StoppingRule {
        tol: 1e-12,
        max_iter: 3,
    })
    .unwrap();
    assert_eq!(run.iterations, 3);
    assert_box_near(
        "gs iterative",
        &run.enclosure,
        &[(-3.4555, -0.2722), (-1.9093, -0.3180)],
        PRINTED,
    );
    assert_box_near(
        "gs iterative",
        &run.enclosure,
        &[
            (-3.4553291666666666, -0.2723354166666657),
            (-1.909701388888889, -0.31772395833333317),
        ],
        TIGHT,
    );

    // from the symmetric box the iteration settles on the closed-form
    // limit almost immediately
    let x0 = IntervalVector::symmetric_box(&cheap.u_hi()).unwrap();
    let settled = iterate(&sys, gauss_seidel_step, x0, StoppingRule::default()).unwrap();
    assert!(settled.converged);
    for i in 0..2 {
        assert!((settled.enclosure[i].lo() - gs[i].lo()).abs() <= 1e-8);
        assert!((settled.enclosure[i].hi() - gs[i].hi()).abs() <= 1e-8);
    }

    let g0 = magnitude_enclosure_gamma0(&sys).unwrap();
    assert_eq!(g0, gs);
}
