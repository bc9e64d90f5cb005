use std::sync::OnceLock;

use proptest::prelude::*;
use unischeme::field::SUPPORTED_Q;
use unischeme::relation::Range;
use unischeme::scheme::brute::classify_index;
use unischeme::scheme::{intersection_number_closed, valencies_closed, BuildMode, SchemeDescriptor};
use unischeme::{FieldElem, FieldTables, Layout, UnitarySpace};

fn space(n: u32, q: u32) -> &'static UnitarySpace {
    static SPACES: OnceLock<Vec<((u32, u32), UnitarySpace)>> = OnceLock::new();
    let all = SPACES.get_or_init(|| {
        [(3, 2), (4, 2), (2, 3), (3, 3), (2, 4), (2, 5)]
            .into_iter()
            .map(|(n, q)| ((n, q), UnitarySpace::new(n, q).unwrap()))
            .collect()
    });
    &all.iter().find(|(k, _)| *k == (n, q)).unwrap().1
}

fn elem(q: u32) -> impl Strategy<Value = FieldElem> {
    (0..q * q).prop_map(FieldElem::from_code)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(qi in 0..SUPPORTED_Q.len(), a in 0u32..81, b in 0u32..81, c in 0u32..81) {
        let q = SUPPORTED_Q[qi];
        let f = FieldTables::new(q).unwrap();
        let order = q * q;
        let (a, b, c) = (FieldElem::from_code(a % order), FieldElem::from_code(b % order), FieldElem::from_code(c % order));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.conj(f.add(a, b)), f.add(f.conj(a), f.conj(b)));
        prop_assert_eq!(f.conj(f.mul(a, b)), f.mul(f.conj(a), f.conj(b)));
        prop_assert!(f.in_subfield(f.norm(a)));
        prop_assert!(f.in_subfield(f.trace(a)));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
        }
    }

    #[test]
    fn hermitian_is_sesquilinear(
        case in prop::sample::select(vec![(3u32, 2u32), (2, 3), (2, 4)]),
        seed in any::<u64>(),
        l in 0u32..81,
    ) {
        let (n, q) = case;
        let us = space(n, q);
        let f = us.field();
        let x = us.vector((seed as usize) % us.len());
        let y = us.vector((seed as usize / 7) % us.len());
        let lam = FieldElem::from_code(l % (q * q));
        let lx = us.scale(lam, x);
        let ly = us.scale(lam, y);
        let ip = f.hermitian(x, y);
        prop_assert_eq!(f.hermitian(&lx, y), f.mul(lam, ip));
        prop_assert_eq!(f.hermitian(x, &ly), f.mul(f.conj(lam), ip));
        prop_assert_eq!(f.hermitian(y, x), f.conj(ip));
    }

    #[test]
    fn converse_of_random_pairs(
        case in prop::sample::select(vec![(3u32, 2u32), (4, 2), (3, 3), (2, 5)]),
        a in any::<usize>(),
        b in any::<usize>(),
    ) {
        let (n, q) = case;
        let us = space(n, q);
        let layout = us.layout();
        let (x, y) = (us.vector(a % us.len()), us.vector(b % us.len()));
        let l = classify_index(us.field(), &layout, x, y);
        prop_assert!(l < layout.rank());
        prop_assert_eq!(classify_index(us.field(), &layout, y, x), layout.converse(l));
        prop_assert_eq!(l == 0, a % us.len() == b % us.len());
    }

    #[test]
    fn unitary_scalars_preserve_relations(
        case in prop::sample::select(vec![(4u32, 2u32), (3, 3), (2, 4)]),
        a in any::<usize>(),
        b in any::<usize>(),
        e in any::<u32>(),
    ) {
        // Scalars of norm 1 lie in GU(n, q), so relations are invariant.
        let (n, q) = case;
        let us = space(n, q);
        let f = us.field();
        let layout = us.layout();
        let mu = f.exp(((q - 1) * (e % (q + 1))) as i64);
        prop_assert_eq!(f.norm(mu), FieldElem::ONE);
        let (x, y) = (us.vector(a % us.len()), us.vector(b % us.len()));
        let (mx, my) = (us.scale(mu, x), us.scale(mu, y));
        prop_assert_eq!(
            classify_index(f, &layout, &mx, &my),
            classify_index(f, &layout, x, y)
        );
    }

    #[test]
    fn closed_tensor_invariants(n in 2u32..10, q in prop::sample::select(vec![2u32, 3, 4, 5])) {
        // building runs the row-sum, valency and converse checks
        let sd = SchemeDescriptor::build(n, q, BuildMode::Closed).unwrap();
        prop_assert_eq!(sd.is_commutative(), q == 2);
        let k = valencies_closed(n, q).unwrap();
        prop_assert_eq!(k.len(), sd.rank());
    }

    #[test]
    fn converse_preserves_ranges(n in 2u32..8, qi in 0..SUPPORTED_Q.len(), l in any::<usize>()) {
        let layout = Layout::new(n, SUPPORTED_Q[qi]);
        let l = l % layout.rank();
        let c = layout.converse(l);
        prop_assert_eq!(layout.range(l), layout.range(c));
        prop_assert_eq!(layout.converse(c), l);
        prop_assert_eq!(layout.range(l) == Range::D, l == layout.d());
    }

    #[test]
    fn closed_entries_are_nonnegative(n in 2u32..12, qi in 0..SUPPORTED_Q.len(), h in any::<usize>(), i in any::<usize>(), j in any::<usize>()) {
        let q = SUPPORTED_Q[qi];
        let r = Layout::new(n, q).rank();
        let v = intersection_number_closed(n, q, h % r, i % r, j % r).unwrap();
        prop_assert!(v >= 0.into());
    }

    #[test]
    fn random_elements_have_consistent_logs(qi in 0..SUPPORTED_Q.len(), x in elem(9)) {
        let q = SUPPORTED_Q[qi];
        let f = FieldTables::new(q).unwrap();
        let x = FieldElem::from_code(x.code() % (q * q));
        if let Some(l) = x.log() {
            prop_assert_eq!(f.exp(l as i64), x);
        }
    }
}
