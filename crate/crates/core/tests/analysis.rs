use num_complex::Complex64;
use qiso2::analysis::{
    canonical_params, classify_params, equivalent_params, find_intertwiner, spectrum_i, ClassLabel,
};
use qiso2::repmod::{Params, RepParams, Signs, Window};
use qiso2::scalars::Scalar;
use qiso2::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: f64 = 1.7;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn base() -> Params<Complex64> {
    Params::numeric(c(Q, 0.0), c(1.0, 0.0), c(1.0, 0.0))
}

fn random_c(rng: &mut ChaCha8Rng) -> Complex64 {
    let m: f64 = rng.gen_range(0.3..3.0);
    let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(m, a)
}

fn close(a: &RepParams<Complex64>, b: &RepParams<Complex64>) -> bool {
    let near = |x: &Complex64, y: &Complex64| (x - y).norm() < 1e-9 * x.norm().max(1.0);
    match (a, b) {
        (RepParams::ClassicalIso2 { r, s }, RepParams::ClassicalIso2 { r: r2, s: s2 })
        | (RepParams::ClassicalM2 { r, s }, RepParams::ClassicalM2 { r: r2, s: s2 }) => near(r, r2) && near(s, s2),
        (RepParams::Nonclassical { r, signs }, RepParams::Nonclassical { r: r2, signs: g2 }) => {
            near(r, r2) && signs == g2
        }
        _ => false,
    }
}

/// Classical iso2 points equivalent to `(r, s)`: `r -> ±r`, `s -> q^n s`.
fn orbit(r: Complex64, s: Complex64, rng: &mut ChaCha8Rng) -> RepParams<Complex64> {
    let n = rng.gen_range(-3..=3);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    RepParams::ClassicalIso2 { r: r * sign, s: s * Q.powi(n) }
}

#[test]
fn degenerate_points_pair_mirrored_indices() {
    let b = base();
    let w = Window::new(-10, 10).unwrap();
    for m in -3..=3i64 {
        for eps in [1i8, -1] {
            let s = c(0.0, eps as f64) * Q.powf(m as f64 + 0.5);
            let label = classify_params(&c(2.1, 0.0), &s, &b).unwrap();
            assert_eq!(label, ClassLabel::DegenerateReducible { m, eps });
            let rep = RepParams::ClassicalIso2 { r: c(2.1, 0.0), s };
            let sp = spectrum_i(&rep, &b, w).unwrap();
            let want: Vec<(i64, i64)> = w
                .indices()
                .filter_map(|j| {
                    let k = -2 * m - 1 - j;
                    (j < k && w.contains(k)).then_some((j, k))
                })
                .collect();
            assert_eq!(sp.degenerate_pairs, want, "m={m} eps={eps}");
        }
    }
}

#[test]
fn symbolic_degenerate_pairs_agree_with_numeric() {
    let b = Params::symbolic();
    let w = Window::new(-6, 6).unwrap();
    for m in -2..=2i64 {
        let s = &Scalar::i() * &Scalar::t_pow(2 * m + 1);
        let sp = spectrum_i(&RepParams::ClassicalIso2 { r: Scalar::r(), s }, &b, w).unwrap();
        assert!(sp.degenerate_pairs.iter().all(|(j, k)| j + k == -2 * m - 1));
        assert_eq!(sp.max_multiplicity(), 2);
    }
}

#[test]
fn generic_points_have_simple_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let b = base();
    for _ in 0..20 {
        let (r, s) = (random_c(&mut rng), random_c(&mut rng));
        assert_eq!(classify_params(&r, &s, &b).unwrap(), ClassLabel::ClassicalIrreducible);
        let sp = spectrum_i(&RepParams::ClassicalIso2 { r, s }, &b, Window::new(-10, 10).unwrap()).unwrap();
        assert_eq!(sp.max_multiplicity(), 1);
    }
}

#[test]
fn integer_ladder_is_not_extendable() {
    let b = base();
    for n in -2..=2 {
        let s = c(0.0, 1.0) * Q.powi(n as i32);
        assert_eq!(classify_params(&c(1.0, 0.0), &s, &b).unwrap(), ClassLabel::NotExtendable { n });
        let rep = RepParams::ClassicalIso2 { r: c(1.0, 0.0), s };
        assert!(matches!(canonical_params(&rep, &b), Err(Error::NonExtendable { .. })));
    }
}

#[test]
fn equivalence_is_an_equivalence_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let b = base();
    for _ in 0..15 {
        let (r, s) = (random_c(&mut rng), random_c(&mut rng));
        let pts: Vec<_> = (0..3).map(|_| orbit(r, s, &mut rng)).collect();
        let other = RepParams::ClassicalIso2 { r, s: s * Q.sqrt() };
        for x in &pts {
            assert!(equivalent_params(x, x, &b).unwrap());
            for y in &pts {
                assert!(equivalent_params(x, y, &b).unwrap());
                assert_eq!(equivalent_params(x, y, &b).unwrap(), equivalent_params(y, x, &b).unwrap());
            }
            assert!(!equivalent_params(x, &other, &b).unwrap());
        }
    }
}

#[test]
fn canonical_form_is_a_class_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let b = base();
    for _ in 0..30 {
        let (r, s) = (random_c(&mut rng), random_c(&mut rng));
        let x = orbit(r, s, &mut rng);
        let y = orbit(r, s, &mut rng);
        let (cx, cy) = (canonical_params(&x, &b).unwrap(), canonical_params(&y, &b).unwrap());
        assert!(close(&cx, &cy), "{x:?} {y:?} -> {cx:?} {cy:?}");
        assert!(close(&canonical_params(&cx, &b).unwrap(), &cx));
        assert!(equivalent_params(&cx, &x, &b).unwrap());
    }
    for (e, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let r = random_c(&mut rng);
        let x = RepParams::Nonclassical { r, signs: Signs::new(e, e2).unwrap() };
        let y = RepParams::Nonclassical { r: -r, signs: Signs::new(e, -e2).unwrap() };
        assert!(close(&canonical_params(&x, &b).unwrap(), &canonical_params(&y, &b).unwrap()));
    }
}

#[test]
fn spectrum_is_shifted_by_canonicalization() {
    // s -> q^n s relabels the basis e_j -> e_{j-n}
    let b = base();
    let r = c(2.1, 0.0);
    let s = c(0.8, 0.3);
    let n = 3;
    let shifted = RepParams::ClassicalIso2 { r: -r, s: s * Q.powi(n) };
    let canon = canonical_params(&shifted, &b).unwrap();
    let RepParams::ClassicalIso2 { s: cs, .. } = canon else { unreachable!() };
    let k = ((cs / s).norm().ln() / Q.ln()).round() as i64;
    let w = Window::new(-8, 8).unwrap();
    let a = spectrum_i(&shifted, &b, w).unwrap().eigenvalues;
    let bb = spectrum_i(&canon, &b, Window::new(-8 + n as i64 - k, 8 + n as i64 - k).unwrap())
        .unwrap()
        .eigenvalues;
    for ((_, x), (_, y)) in a.iter().zip(&bb) {
        assert!((x - y).norm() < 1e-9 * x.norm().max(1.0), "{x} {y}");
    }
}

#[test]
fn equivalent_pairs_have_intertwiners() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let b = base();
    let w = Window::new(-12, 12).unwrap();
    for _ in 0..6 {
        let (r, s) = (random_c(&mut rng), random_c(&mut rng));
        let x = RepParams::ClassicalIso2 { r, s };
        let y = orbit(r, s, &mut rng);
        assert!(equivalent_params(&x, &y, &b).unwrap());
        let it = find_intertwiner(&x, &y, &b, w, 1e-8).unwrap();
        assert!(it.found(), "{x:?} {y:?} residual {}", it.residual);
    }
    let x = RepParams::ClassicalIso2 { r: c(2.1, 0.0), s: c(0.8, 0.3) };
    let y = RepParams::ClassicalIso2 { r: c(2.1, 0.0), s: c(0.8, 0.3) * Q.sqrt() };
    let it = find_intertwiner(&x, &y, &b, w, 1e-8).unwrap();
    assert!(!it.found() && it.residual > 1e-2, "{}", it.residual);
}

#[test]
fn mixed_algebras_are_rejected() {
    let b = base();
    let x = RepParams::ClassicalIso2 { r: c(1.0, 0.0), s: c(0.5, 0.5) };
    let y = RepParams::ClassicalM2 { r: c(1.0, 0.0), s: c(0.5, 0.5) };
    assert!(matches!(equivalent_params(&x, &y, &b), Err(Error::MixedAlgebra(_))));
    assert!(matches!(find_intertwiner(&x, &y, &b, Window::new(-3, 3).unwrap(), 1e-8), Err(Error::MixedAlgebra(_))));
}
