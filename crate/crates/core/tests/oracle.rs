use casimir_core::exactnum::rational::{int, rat};
use casimir_core::oracle::{
    adjudicate_params, oracle_spectrum_for, radial_operator, AdjudicationOptions, GridSpec, RadialGrid,
    RadialModel,
};
use casimir_core::spectrum::Parity;

const ORDER_FLOOR: f64 = 1.99;

#[test]
fn curved_levels_converge_at_second_order() {
    for (lambda, r_max) in [(1.0, Some(6.0)), (-1.0, None), (0.1, None)] {
        let model = RadialModel::new(1.0, lambda, 1.0).unwrap();
        let grid = GridSpec { m_max: 2, r_max, ..GridSpec::default() };
        let s = oracle_spectrum_for(&model, &grid, 3).unwrap();
        for l in &s.levels {
            let order = l.order.unwrap();
            assert!(order >= ORDER_FLOOR, "lambda={lambda} m={} level={}: order {order}", l.m, l.level);
            let shrink = (l.raw[0] - l.raw[1]) / (l.raw[1] - l.raw[2]);
            assert!(shrink >= 2f64.powf(ORDER_FLOOR), "lambda={lambda}: shrink {shrink}");
        }
    }
}

#[test]
fn operator_is_exactly_symmetric() {
    let model = RadialModel::new(1.0, 0.3, 2.0).unwrap();
    let grid = RadialGrid::new(&model, 200, 7.0).unwrap();
    let t = radial_operator(&model, 2, &grid).unwrap();
    // off[i]^2 is the product of the two one-sided stencil weights
    for i in 0..t.off.len() {
        let k = 1.0 / (2.0 * grid.h * grid.h);
        let lower = -k * grid.r_face[i + 1] / grid.r[i + 1];
        let upper = -k * grid.r_face[i + 1] / grid.r[i];
        assert!((t.off[i] * t.off[i] - lower * upper).abs() <= 1e-12 * t.off[i] * t.off[i]);
    }
}

#[test]
fn hyperbolic_levels_follow_the_plus_sign_formula() {
    // kappa = -0.1, plus sign: E_N = -0.05 N^2 + (N / 2) sqrt(4.01)
    let model = RadialModel::new(1.0, 0.1, 1.0).unwrap();
    let s = oracle_spectrum_for(&model, &GridSpec { m_max: 9, ..GridSpec::default() }, 5).unwrap();
    for n in 1..=9 {
        let nf = n as f64;
        let want = -0.05 * nf * nf + 0.5 * nf * 4.01f64.sqrt();
        let best = s.levels.iter().map(|l| (l.e - want).abs()).fold(f64::INFINITY, f64::min);
        assert!(best < 1e-6, "N={n}: {want}, nearest off by {best:e}");
        // degeneracy N: every m with |m| = N - 1, N - 3, ...
        let count = s.levels.iter().filter(|l| (l.e - want).abs() < 1e-4).count();
        assert_eq!(count, n, "N={n}");
    }
    assert!(s.all_decayed());
}

#[test]
fn sphere_wall_is_reported_when_tails_reach_it() {
    let model = RadialModel::new(1.0, -1.0, 1.0).unwrap();
    let s = oracle_spectrum_for(&model, &GridSpec { m_max: 1, ..GridSpec::default() }, 2).unwrap();
    assert!(!s.all_decayed());
    assert!(s.potential_limit.is_none());
}

#[test]
fn hyperbolic_adjudication_records_where_matching_stops() {
    let grid = GridSpec { m_max: 9, ..GridSpec::default() };
    let r = adjudicate_params(&int(1), &rat(1, 10), &int(1), &grid, 5, &AdjudicationOptions::default()).unwrap();
    assert!(r.unique);
    let w = r.conventions.iter().find(|c| Some(c.convention) == r.winner).unwrap();
    // even series: N = 9 compared, N = 11 fails positivity
    assert!(w.stops.iter().any(|s| s.parity == Parity::Even && s.branch == "u1" && s.p == 5));
    // odd series: N = 10 lies above the potential limit
    assert!(w.stops.iter().any(|s| s.parity == Parity::Odd && s.branch == "u1" && s.reason.contains("potential limit")));
    // descending-side representations are not compared
    assert!(w.stops.iter().any(|s| s.reason.contains("turnover")));
}

#[test]
fn match_counts_survive_rescaling() {
    // (omega, lambda) -> (2 omega, 2 lambda) rescales every energy by 2
    let grid = GridSpec { m_max: 9, ..GridSpec::default() };
    let opts = AdjudicationOptions::default();
    let a = adjudicate_params(&int(1), &rat(1, 10), &int(1), &grid, 5, &opts).unwrap();
    let b = adjudicate_params(&int(1), &rat(2, 10), &int(4), &grid, 5, &opts).unwrap();
    assert_eq!(a.winner, b.winner);
    for (x, y) in a.conventions.iter().zip(&b.conventions) {
        assert_eq!(x.convention, y.convention);
        assert_eq!((x.matched, x.evaluated), (y.matched, y.evaluated), "{}", x.name);
    }
    assert!((b.complete_below / a.complete_below - 2.0).abs() < 1e-6);
}

#[test]
fn empty_algebraic_input_gives_empty_report() {
    let model = RadialModel::new(1.0, 0.0, 1.0).unwrap();
    let s = oracle_spectrum_for(&model, &GridSpec { m_max: 1, ..GridSpec::default() }, 2).unwrap();
    let r = casimir_core::oracle::adjudicate(&[], &s, &AdjudicationOptions::default());
    assert!(r.conventions.is_empty() && !r.unique && r.winner_name.is_none());
}
