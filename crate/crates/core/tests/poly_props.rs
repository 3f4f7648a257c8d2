mod common;

use common::{companion_roots, naive_eval, root_set_distance};
use num_complex::Complex64;
use proptest::prelude::*;
use rirkit::poly::on_axis;
use rirkit::{Polynomial, StabilityKind};

fn binomial_row(n: usize) -> Vec<f64> {
    let mut row = vec![1.0];
    for _ in 0..n {
        let mut next = vec![1.0; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

#[test]
fn binomial_products_and_derivatives() {
    let s1 = Polynomial::linear(1.0, 1.0);
    let p = &s1.pow(3) * &s1.pow(4);
    assert_eq!(p.coeffs(), binomial_row(7).as_slice());
    let d = p.derivative();
    let expect: Vec<f64> = binomial_row(6).iter().map(|c| 7.0 * c).collect();
    assert_eq!(d.coeffs(), expect.as_slice());
}

#[test]
fn cubic_of_first_cyclic_network() {
    // (s+1)^3 + 20: -1 - 20^(1/3) and -1 + 20^(1/3) e^{±jπ/3}.
    let p = Polynomial::new(vec![21.0, 3.0, 3.0, 1.0]);
    let r = p.roots().unwrap();
    let c = 20f64.cbrt();
    let expect = [
        Complex64::new(-1.0 - c, 0.0),
        Complex64::new(c * 0.5 - 1.0, c * 3f64.sqrt() / 2.0),
        Complex64::new(c * 0.5 - 1.0, -c * 3f64.sqrt() / 2.0),
    ];
    assert!(root_set_distance(&r, &expect) < 1e-12);
    assert!((expect[1].re - 0.3572).abs() < 1e-4);
    assert_eq!(p.stability().unwrap().unstable_count, 2);
}

#[test]
fn factored_cubic_roots() {
    let p = &Polynomial::linear(2.0, 1.0) * &Polynomial::new(vec![4.0, 0.5, 1.0]);
    let im = (4.0f64 - 0.0625).sqrt();
    let expect = [
        Complex64::new(-2.0, 0.0),
        Complex64::new(-0.25, im),
        Complex64::new(-0.25, -im),
    ];
    assert!(root_set_distance(&p.roots().unwrap(), &expect) < 1e-9);
    assert!((im - 1.9843).abs() < 1e-4);
}

fn coeff_vec(max_deg: usize) -> impl Strategy<Value = Vec<f64>> {
    (1..=max_deg).prop_flat_map(|n| {
        (
            prop::collection::vec(-5.0..5.0f64, n),
            prop_oneof![0.2..5.0f64, -5.0..-0.2f64],
        )
            .prop_map(|(mut c, lead)| {
                c.push(lead);
                c
            })
    })
}

/// Real roots and conjugate pairs with pairwise separation at least 0.2.
fn separated_roots(max_deg: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-4.0..4.0f64, 0.0..4.0f64, any::<bool>()), 1..=max_deg / 2)
        .prop_filter_map("roots too close", move |spec| {
            let mut roots = Vec::new();
            for (re, im, pair) in spec {
                if pair && im > 0.2 {
                    roots.push(Complex64::new(re, im));
                    roots.push(Complex64::new(re, -im));
                } else {
                    roots.push(Complex64::new(re, 0.0));
                }
            }
            if roots.len() > max_deg {
                return None;
            }
            for (i, a) in roots.iter().enumerate() {
                for b in &roots[i + 1..] {
                    if (a - b).norm() < 0.2 {
                        return None;
                    }
                }
            }
            Some(roots)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn routh_agrees_with_companion_oracle(c in coeff_vec(8)) {
        let p = Polynomial::new(c);
        let oracle = companion_roots(&p);
        // Near-axis roots make the count ill-posed.
        prop_assume!(oracle.iter().all(|z| z.re.abs() > 1e-6 * z.norm().max(1.0)));
        let rh = p.routh_hurwitz().unwrap();
        prop_assume!(rh.kind != StabilityKind::Degenerate);
        let expected = oracle.iter().filter(|z| z.re > 0.0 && !on_axis(**z)).count();
        prop_assert_eq!(rh.unstable_count, expected);
        prop_assert_eq!(rh.kind == StabilityKind::Stable, expected == 0);
    }

    #[test]
    fn roots_match_companion_oracle(c in coeff_vec(12)) {
        let p = Polynomial::new(c);
        let oracle = companion_roots(&p);
        let mine = p.roots().unwrap();
        // Both solvers are backward stable; compare through the residual.
        for z in &mine {
            let scale = p.eval_abs_scale(*z);
            prop_assert!(p.eval(*z).norm() <= 1e-9 * scale, "residual at {z}");
        }
        prop_assert_eq!(mine.len(), oracle.len());
    }

    #[test]
    fn roots_round_trip(roots in separated_roots(10), lead in 0.5..3.0f64) {
        let p = Polynomial::from_roots(&roots).scale(lead);
        let back = p.roots().unwrap();
        prop_assert!(root_set_distance(&back, &roots) < 1e-8);
        prop_assert_eq!(back.iter().filter(|z| z.im > 0.0).count(), roots.iter().filter(|z| z.im > 0.0).count());
    }

    #[test]
    fn stable_by_construction(
        reals in prop::collection::vec(0.05..5.0f64, 0..3),
        quads in prop::collection::vec((0.05..1.0f64, 0.1..5.0f64), 0..3),
    ) {
        prop_assume!(!reals.is_empty() || !quads.is_empty());
        let mut p = Polynomial::one();
        for a in &reals {
            p = &p * &Polynomial::linear(*a, 1.0);
        }
        for (z, w) in &quads {
            p = &p * &Polynomial::new(vec![w * w, 2.0 * z * w, 1.0]);
        }
        prop_assert_eq!(p.routh_hurwitz().unwrap().kind, StabilityKind::Stable);
        prop_assert!(p.roots().unwrap().iter().all(|z| z.re < 0.0));
    }

    #[test]
    fn horner_matches_naive_sum(c in prop::collection::vec(-3.0..3.0f64, 7), re in -2.0..2.0f64, im in -2.0..2.0f64) {
        let p = Polynomial::new(c);
        let s = Complex64::new(re, im);
        let (a, b) = (p.eval(s), naive_eval(&p, s));
        prop_assert!((a - b).norm() <= 1e-12 * p.eval_abs_scale(s).max(1e-300));
    }

    #[test]
    fn trimmed_form_invariant(c in prop::collection::vec(-3.0..3.0f64, 0..6), zeros in 0usize..3) {
        let mut v = c.clone();
        v.extend(std::iter::repeat_n(0.0, zeros));
        let p = Polynomial::new(v);
        match p.degree() {
            None => prop_assert!(p.is_zero()),
            Some(d) => {
                prop_assert_eq!(d + 1, p.coeffs().len());
                prop_assert!(p.leading() != 0.0);
            }
        }
    }
}

#[test]
fn stability_examples() {
    assert_eq!(
        Polynomial::new(vec![1.0, 2.0, 1.0])
            .stability()
            .unwrap()
            .kind,
        StabilityKind::Stable
    );
    let v = Polynomial::new(vec![-1.0, 0.0, 1.0]).stability().unwrap();
    assert_eq!((v.kind, v.unstable_count), (StabilityKind::Unstable, 1));
    // Missing s^1 term: zero first-column entry, left to the root finder.
    let v = Polynomial::new(vec![-1.0, 0.0, 1.0])
        .routh_hurwitz()
        .unwrap();
    assert_eq!(v.kind, StabilityKind::Degenerate);
    let v = Polynomial::new(vec![-1.0, 0.5, 1.0])
        .routh_hurwitz()
        .unwrap();
    assert_eq!((v.kind, v.unstable_count), (StabilityKind::Unstable, 1));
}
