//! Tree reduction against hand-written formulas for the ten arrangements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use springopt_core::{canonical_case, resistance, response_force, CaseId, Limits};

fn closed_resistance(case: u8, c: [f64; 4]) -> f64 {
    let [c1, c2, c3, c4] = c;
    let inv = |x: f64| 1.0 / x;
    match case {
        1 => inv(c1) + inv(c2 + c3) + inv(c4),
        2 => inv(c1) + inv(c2) + inv(c3) + inv(c4),
        3 => inv(inv(inv(c1) + inv(c2)) + inv(inv(c3) + inv(c4))),
        4 => inv(inv(inv(c1) + inv(c2) + inv(c3)) + c4),
        5 => inv(inv(inv(c1) + inv(c2)) + c3 + c4),
        6 => inv(c1) + inv(c2 + c3 + c4),
        7 => inv(c1 + c3) + inv(c2 + c4),
        8 => inv(c1 + c2 + c3 + c4),
        9 => inv(c1) + inv(c4 + inv(inv(c2) + inv(c3))),
        10 => inv(c4 + inv(inv(c1) + inv(c2 + c3))),
        _ => unreachable!(),
    }
}

fn closed_force(case: u8, c: [f64; 4]) -> f64 {
    let [c1, c2, c3, c4] = c;
    match case {
        1 => c1.min(c2 + c3).min(c4),
        2 => c1.min(c2).min(c3).min(c4),
        3 => c1.min(c2) + c3.min(c4),
        4 => c1.min(c2).min(c3) + c4,
        5 => c1.min(c2) + c3 + c4,
        6 => c1.min(c2 + c3 + c4),
        7 => (c1 + c3).min(c2 + c4),
        8 => c1 + c2 + c3 + c4,
        9 => c1.min(c2.min(c3) + c4),
        10 => c1.min(c2 + c3) + c4,
        _ => unreachable!(),
    }
}

fn random_limits(rng: &mut ChaCha8Rng) -> [f64; 4] {
    // log-uniform over four decades
    std::array::from_fn(|_| 10f64.powf(rng.gen_range(-2.0..2.0)))
}

#[test]
fn resistance_matches_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for id in CaseId::all() {
        let tree = canonical_case(id);
        for _ in 0..1000 {
            let c = random_limits(&mut rng);
            let got = resistance(&tree, &Limits::new(c.to_vec()).unwrap()).unwrap();
            let want = closed_resistance(id.get(), c);
            assert!(
                (got - want).abs() <= 1e-12 * want.abs(),
                "case {id} c={c:?}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn force_matches_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for id in CaseId::all() {
        let tree = canonical_case(id);
        for _ in 0..1000 {
            let c = random_limits(&mut rng);
            let got = response_force(&tree, &Limits::new(c.to_vec()).unwrap()).unwrap();
            let want = closed_force(id.get(), c);
            assert!(
                (got - want).abs() <= 1e-12 * want.abs(),
                "case {id} c={c:?}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn formula_strings_agree_with_numbers() {
    // spot check of the printed formula for case 9 at c = (1, 2, 3, 4)
    let id = CaseId::new(9).unwrap();
    assert_eq!(
        id.resistance_formula(),
        "R = 1/c1 + 1/(c4 + 1/(1/c2 + 1/c3))"
    );
    let r = resistance(
        &canonical_case(id),
        &Limits::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap(),
    )
    .unwrap();
    assert!((r - (1.0 + 1.0 / (4.0 + 1.2))).abs() < 1e-15);
}
