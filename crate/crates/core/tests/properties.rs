mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use seifert_core::alexander::{alexander_fiber, reconstruct_via_semigroup, symmetrize, verify_pm_one};
use seifert_core::lattice::{d_invariant, d_invariant_box, d_of_manifold};
use seifert_core::plumbing::plumbing_graph;
use seifert_core::semigroup::NumericalSemigroup;
use seifert_core::seifert::{canonicalize, from_multiplicities, Multiplicities, OrientedSeifert, SeifertInvariants, Sign};
use seifert_core::surgery::{cross_case, surger_fiber, SurgeryContext};

/// Greedily keeps the candidates coprime to everything already kept.
fn coprime_subset(candidates: Vec<i64>) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    for x in candidates {
        if out.iter().all(|y| x.gcd(y) == 1) {
            out.push(x);
        }
    }
    out
}

/// Pairwise coprime orders `>= 2`, between `min` and `max` of them, with
/// the chosen fiber last.
fn orders(max_entry: i64, min: usize, max: usize) -> impl Strategy<Value = Vec<i64>> {
    (prop::collection::vec(2..=max_entry, 12), any::<prop::sample::Index>(), 0usize..4)
        .prop_filter_map("too few coprime entries", move |(c, pick, regular)| {
            let mut t = coprime_subset(c);
            if t.len() < min {
                return None;
            }
            t.truncate(max);
            t.sort_unstable();
            let fiber = t.remove(pick.index(t.len()));
            t.push(fiber);
            if regular == 0 && t.len() > min {
                *t.last_mut().unwrap() = 1;
            }
            Some(t)
        })
}

fn seifert(t: &[i64]) -> SeifertInvariants {
    from_multiplicities(&Multiplicities::from_i64s(t).unwrap()).unwrap()
}

fn small(inv: &SeifertInvariants) -> (i64, Vec<(i64, i64)>) {
    (
        inv.e.to_i64().unwrap(),
        inv.pairs
            .iter()
            .filter(|(a, _)| !a.is_one())
            .map(|(a, b)| (a.to_i64().unwrap(), b.to_i64().unwrap()))
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn from_multiplicities_is_valid(t in orders(50, 1, 6)) {
        let inv = seifert(&t);
        prop_assert!(inv.validate().is_ok());
        prop_assert!(inv.e >= BigInt::one());
        prop_assert!(inv.is_canonical());
    }

    #[test]
    fn reverse_orientation_is_an_involution(t in orders(50, 2, 6)) {
        let inv = seifert(&t);
        let rev = inv.reverse_orientation();
        prop_assert!(rev.verify_eq1(1));
        prop_assert!(!rev.verify_eq1(-1));
        prop_assert_eq!(rev.reverse_orientation(), inv);
    }

    #[test]
    fn canonicalize_is_idempotent(t in orders(30, 2, 5), shifts in prop::collection::vec(-4i64..=4, 5)) {
        let inv = seifert(&t);
        let mut e = inv.e.clone();
        let raw: Vec<(BigInt, BigInt)> = inv.pairs.iter().zip(shifts.iter().cycle())
            .map(|((a, b), &k)| { e += k; (a.clone(), b + a * k) })
            .collect();
        let moved = SeifertInvariants::new(e.clone(), raw.clone());
        prop_assert_eq!(moved.eq1_value(), inv.eq1_value());
        let c = canonicalize(&e, &raw).unwrap();
        prop_assert_eq!(&c, &inv);
        prop_assert_eq!(canonicalize(&c.e, &c.pairs).unwrap(), c);
    }

    #[test]
    fn surgery_identities(t in orders(25, 3, 4), m in -5i64..=5) {
        let y = seifert(&t);
        let ctx = SurgeryContext::new(&y).unwrap();
        let (an, bn) = y.fiber().unwrap().clone();
        prop_assert!((&ctx.alpha * &bn + 1u32).is_multiple_of(&an));
        let m = BigInt::from(m);
        let s = surger_fiber(&y, &m).unwrap();
        let core = &an - &m * &ctx.alpha;
        prop_assert_eq!(&s.core_fiber_order, &core.abs());
        prop_assert!(s.result.oriented_presentation().verify_eq1(-s.result.sign.as_i32()));
        let inv = s.result.invariants();
        prop_assert!(inv.validate().is_ok());
        let head: Vec<BigInt> = inv.orders()[..inv.n() - 1].to_vec();
        prop_assert_eq!(head, y.orders()[..y.n() - 1].to_vec());
        // the raw second-case pair is integral by construction; check it explicitly
        let raw = &m * (&ctx.alpha - &ctx.beta) + &bn - &an;
        let expected = seifert(&inv.orders().iter().map(|a| a.to_i64().unwrap()).collect::<Vec<_>>());
        prop_assert_eq!(inv, expected);
        if core < BigInt::zero() {
            prop_assert_eq!(raw.mod_floor(&core.abs()), s.result.invariants().fiber().unwrap().1.clone());
        }
    }

    #[test]
    fn surgeries_compose(t in orders(25, 3, 4), m1 in -4i64..=4, m2 in -4i64..=4) {
        let y = seifert(&t);
        let first = surger_fiber(&y, &BigInt::from(m1)).unwrap();
        let inter = first.result.invariants();
        prop_assume!(SurgeryContext::new(&inter).is_ok());
        let s = first.result.sign.as_i32() as i64;
        let second = surger_fiber(&inter, &BigInt::from(s * m2)).unwrap();
        let direct = surger_fiber(&y, &BigInt::from(m1 + m2)).unwrap();
        let sign = if s < 0 { -second.result.sign } else { second.result.sign };
        prop_assert_eq!(sign, direct.result.sign);
        prop_assert_eq!(second.result.invariants(), direct.result.invariants());
    }

    #[test]
    fn cross_case_bounds(t in orders(40, 3, 4)) {
        let y = seifert(&t);
        let ctx = SurgeryContext::new(&y).unwrap();
        let an = y.fiber().unwrap().0.clone();
        prop_assume!(an < ctx.alpha);
        let c = cross_case(&y).unwrap();
        let (a, b) = c.fiber().unwrap().clone();
        prop_assert_eq!(&a, &(&ctx.alpha - &an));
        if a > BigInt::one() {
            prop_assert!(b > BigInt::zero() && b < a);
        } else {
            prop_assert!(b.is_zero());
        }
        let one = surger_fiber(&y, &BigInt::one()).unwrap();
        prop_assert_eq!(one.result, OrientedSeifert::new(Sign::Negative, c));
    }

    #[test]
    fn alexander_properties(t in orders(12, 3, 5)) {
        let m = Multiplicities::from_i64s(&t).unwrap();
        let p = alexander_fiber(&m).unwrap();
        prop_assert!(verify_pm_one(&p));
        prop_assert!(p.eval_at_one().is_one());
        prop_assert!(p.is_palindromic());
        prop_assert!(symmetrize(&p).is_ok());
        prop_assert_eq!(&reconstruct_via_semigroup(&m).unwrap(), &p);
        for k in [1i64, 1009, 4001] {
            let mut other = t.clone();
            *other.last_mut().unwrap() = k;
            if let Ok(m2) = Multiplicities::from_i64s(&other) {
                prop_assert_eq!(&alexander_fiber(&m2).unwrap(), &p);
            }
        }
    }

    #[test]
    fn unique_expressions_are_distinct_mod_alpha(t in orders(12, 3, 5)) {
        let (s, alpha) = NumericalSemigroup::of_fiber(&Multiplicities::from_i64s(&t).unwrap()).unwrap();
        let star = s.unique_expression_set(alpha).unwrap();
        prop_assert!(star.contains(&0));
        let mut residues: Vec<u64> = star.iter().map(|x| x % alpha).collect();
        residues.sort_unstable();
        residues.dedup();
        prop_assert_eq!(residues.len(), star.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn d_matches_tau_oracle(t in orders(13, 3, 4)) {
        let inv = seifert(&t);
        let lattice = plumbing_graph(&inv).unwrap().gram_matrix().unwrap();
        let d = d_invariant(&lattice).unwrap();
        prop_assert_eq!(d % 2, 0);
        prop_assert!(d >= 0);
        let (e, pairs) = small(&inv);
        prop_assert_eq!(d, common::tau_d(lattice.gram(), e, &pairs));
        let rev = d_of_manifold(&OrientedSeifert::new(Sign::Negative, inv)).unwrap();
        prop_assert_eq!(rev, -d);
    }

    #[test]
    fn d_unchanged_by_adding_alpha(t in orders(11, 3, 4)) {
        let y = seifert(&t);
        let alpha: i64 = t[..t.len() - 1].iter().product();
        prop_assume!(alpha <= 400);
        let mut bigger = t.clone();
        *bigger.last_mut().unwrap() += alpha;
        let d = |t: &[i64]| d_of_manifold(&OrientedSeifert::new(Sign::Positive, seifert(t))).unwrap();
        prop_assert_eq!(d(&t), d(&bigger));
        prop_assert!(y.validate().is_ok());
    }

    #[test]
    fn pruned_search_matches_box(t in orders(7, 3, 3)) {
        let lattice = plumbing_graph(&seifert(&t)).unwrap().gram_matrix().unwrap();
        prop_assume!(lattice.rank() <= 9);
        prop_assert_eq!(d_invariant(&lattice).unwrap(), d_invariant_box(&lattice).unwrap());
    }
}

/// d values frozen from the τ-function oracle.
#[test]
fn frozen_d_values() {
    let cases: [(&[i64], i64); 12] = [
        (&[2, 3, 5], 2),
        (&[2, 3, 7], 0),
        (&[2, 3, 1], 0),
        (&[2, 3, 11], 2),
        (&[2, 3, 13], 0),
        (&[2, 3, 17], 2),
        (&[2, 3, 19], 0),
        (&[2, 3, 25], 0),
        (&[5, 7, 11], 2),
        (&[5, 7, 24], 2),
        (&[2, 3, 5, 7], 2),
        (&[2, 3, 5, 23], 2),
    ];
    for (t, expected) in cases {
        let inv = seifert(t);
        let lattice = plumbing_graph(&inv).unwrap().gram_matrix().unwrap();
        let (e, pairs) = small(&inv);
        assert_eq!(common::tau_d(lattice.gram(), e, &pairs), expected, "oracle {t:?}");
        assert_eq!(d_invariant(&lattice).unwrap(), expected, "{t:?}");
    }
}

/// Surgeries on the order-7 fiber of Σ(2,3,5,7): `Σ(2,3,5,7+30|m|)` for
/// `m <= 0` and `−Σ(2,3,5,30m−7)` for `m > 0`, each checked against the
/// τ-function oracle.
#[test]
fn survey_of_order_seven_fiber() {
    let y = seifert(&[2, 3, 5, 7]);
    let survey = seifert_core::surgery::d_survey(&y, -4..=4).unwrap();
    for (m, d) in survey.rows {
        let last = if m <= 0 { 7 - 30 * m } else { 30 * m - 7 };
        let inv = seifert(&[2, 3, 5, last]);
        let lattice = plumbing_graph(&inv).unwrap().gram_matrix().unwrap();
        let (e, pairs) = small(&inv);
        let oracle = common::tau_d(lattice.gram(), e, &pairs);
        assert_eq!(oracle, 2, "m = {m}");
        assert_eq!(d, if m <= 0 { oracle } else { -oracle }, "m = {m}");
    }
}
