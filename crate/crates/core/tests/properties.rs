use proptest::prelude::*;

use singzeta::degeneracy::{is_nondegenerate_on_face, Mode, RandomizedConfig};
use singzeta::io::{parse_in, print, Aliases};
use singzeta::newton::{newton_boundary, newton_number, normalized_volume};
use singzeta::poly::{rat, Polynomial, Rational};
use singzeta::zeta::varchenko_zeta;

fn poly(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, nvars), -9i64..=9, 1i64..=4),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Polynomial::from_terms(
            nvars,
            terms
                .into_iter()
                .map(|(e, n, d)| (e, Rational::new(n.into(), d.into()))),
        )
    })
}

fn point(nvars: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-5i64..=5, 1i64..=3), nvars)
        .prop_map(|v| v.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())).collect())
}

/// Convenient germ: pure powers on every axis plus a few mixed terms.
fn convenient_germ() -> impl Strategy<Value = Polynomial> {
    (
        prop::collection::vec(2u32..=9, 3),
        prop::collection::vec((prop::collection::vec(0u32..=9, 3), 1i64..=5), 0..=5),
    )
        .prop_map(|(axes, mixed)| {
            let mut terms: Vec<(Vec<u32>, Rational)> = (0..3)
                .map(|i| {
                    let mut e = vec![0; 3];
                    e[i] = axes[i];
                    (e, rat(1))
                })
                .collect();
            terms.extend(
                mixed
                    .into_iter()
                    .filter(|(e, _)| e.iter().sum::<u32>() >= 2)
                    .map(|(e, c)| (e, rat(c))),
            );
            Polynomial::from_terms(3, terms)
        })
}

fn permute(p: &Polynomial, perm: &[usize; 3]) -> Polynomial {
    Polynomial::from_terms(
        3,
        p.terms().map(|(m, c)| {
            let mut e = vec![0; 3];
            for i in 0..3 {
                e[perm[i]] = m.0[i];
            }
            (e, c.clone())
        }),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(3, 3, 4), b in poly(3, 3, 4), c in poly(3, 3, 4)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(3), a.clone());
    }

    #[test]
    fn leibniz_rule(a in poly(3, 4, 4), b in poly(3, 4, 4), i in 0usize..3) {
        let lhs = (&a * &b).derivative(i).unwrap();
        let rhs = &(&a.derivative(i).unwrap() * &b) + &(&a * &b.derivative(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in poly(3, 3, 4), b in poly(3, 3, 4), x in point(3)) {
        let (va, vb) = (a.evaluate(&x).unwrap(), b.evaluate(&x).unwrap());
        prop_assert_eq!((&a + &b).evaluate(&x).unwrap(), &va + &vb);
        prop_assert_eq!((&a * &b).evaluate(&x).unwrap(), &va * &vb);
    }

    #[test]
    fn print_parse_round_trip(a in poly(3, 5, 6)) {
        let text = print(&a);
        let back = parse_in(&text, 3, Aliases::Ambient).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(print(&back), text);
    }

    #[test]
    fn invariants_ignore_variable_order(g in convenient_germ(), k in 0usize..6) {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let h = permute(&g, &perms[k]);
        let (bg, bh) = (newton_boundary(&g).unwrap(), newton_boundary(&h).unwrap());
        prop_assert_eq!(newton_number(&bg).unwrap(), newton_number(&bh).unwrap());
        prop_assert_eq!(varchenko_zeta(&bg).unwrap(), varchenko_zeta(&bh).unwrap());
    }

    #[test]
    fn volume_is_independent_of_triangulation(
        pts in prop::collection::vec(prop::collection::vec(0i64..6, 3), 4..9),
        shift in prop::collection::vec(-4i64..4, 3),
        s in -3i64..=3,
        seed in any::<u64>(),
    ) {
        let v = normalized_volume(&pts).unwrap();
        let mut shuffled = pts.clone();
        let n = shuffled.len();
        shuffled.rotate_left((seed as usize) % n);
        shuffled.reverse();
        prop_assert_eq!(normalized_volume(&shuffled).unwrap(), v);
        // translation followed by a unimodular shear
        let moved: Vec<Vec<i64>> = pts
            .iter()
            .map(|p| {
                let q: Vec<i64> = p.iter().zip(&shift).map(|(a, b)| a + b).collect();
                vec![q[0] + s * q[1], q[1], q[2] - s * q[0]]
            })
            .collect();
        prop_assert_eq!(normalized_volume(&moved).unwrap(), v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn randomized_edge_checks_agree_with_exact(
        g in poly(3, 6, 6).prop_filter("nonzero, no constant", |p| !p.is_zero() && p.constant_term() == rat(0)),
        seed in any::<u64>(),
    ) {
        let b = newton_boundary(&g).unwrap();
        let mode = Mode::Randomized(RandomizedConfig { seed, ..RandomizedConfig::default() });
        for face in b.faces_of_dim(1) {
            let exact = is_nondegenerate_on_face(&g, face, &Mode::Exact).unwrap();
            let random = is_nondegenerate_on_face(&g, face, &mode).unwrap();
            prop_assert_eq!(exact.is_nondegenerate(), random.is_nondegenerate());
        }
    }
}
