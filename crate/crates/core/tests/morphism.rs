use qiso2::freealg::{Iso2Element, Iso2Monomial, M2Element};
use qiso2::morphism::{build_psi, psi_apply};
use qiso2::scalars::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let c = Scalar::from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
    &c * &Scalar::t_pow(rng.gen_range(-2..=2))
}

fn random_element(rng: &mut ChaCha8Rng) -> Iso2Element {
    let n = rng.gen_range(1..=3);
    Iso2Element::from_terms((0..n).map(|_| {
        let deg = rng.gen_range(0..=3u32);
        let j = rng.gen_range(0..=deg);
        let k = rng.gen_range(0..=deg - j);
        (Iso2Monomial::new(j, k, deg - j - k), random_scalar(rng))
    }))
}

#[test]
fn psi_is_multiplicative_on_random_pairs() {
    let a = build_psi().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let x = random_element(&mut rng);
        let y = random_element(&mut rng);
        let lhs = psi_apply(&(&x * &y), &a);
        let rhs = &psi_apply(&x, &a) * &psi_apply(&y, &a);
        assert_eq!(lhs, rhs, "x = {x}, y = {y}");
    }
}

#[test]
fn first_relation_pushed_through() {
    let a = build_psi().unwrap();
    let i = Iso2Element::i_gen();
    let t2 = Iso2Element::t2();
    let x = Iso2Element::q_commutator(&i, &t2);
    assert_eq!(psi_apply(&x, &a), psi_apply(&Iso2Element::t1(), &a));
}

#[test]
fn psi_is_linear() {
    let a = build_psi().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let x = random_element(&mut rng);
        let y = random_element(&mut rng);
        let lhs = psi_apply(&(&x + &y), &a);
        let rhs: M2Element = &psi_apply(&x, &a) + &psi_apply(&y, &a);
        assert_eq!(lhs, rhs);
    }
}
