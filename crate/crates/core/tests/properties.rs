use std::collections::BTreeSet;

use proptest::prelude::*;

use serrelat::commspec::{prime_correspondence, specialisation_check, thomason_bijection, topology_zoo, torsion_roundtrip, Flag, SpectralPoset};
use serrelat::frame::{compare_topologies, upset_frame, ElemSet, FinitePoset, TopologyComparison};
use serrelat::functor::{composition_check, continuity_check, pullback_report, ExactFunctorModel};
use serrelat::serre::{classify_local, quotient_model, serre_local_characterizations, CategoryModel};
use serrelat::verify::cha_laws;

/// A partial order on up to `max` points from a strictly upper triangular relation.
fn poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (0..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let mut leq = vec![vec![false; n]; n];
            for i in 0..n {
                leq[i][i] = true;
                for j in i + 1..n {
                    leq[i][j] = bits[i * n + j];
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if leq[i][k] && leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
            FinitePoset::from_leq((0..n).map(|i| format!("p{i}")).collect(), &leq).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn up_set_frames_are_heyting(p in poset(5)) {
        let frame = upset_frame(&p).unwrap();
        let r = cha_laws(&frame).unwrap();
        prop_assert!(r.violations.is_empty(), "{:?}", r.violations);
    }

    #[test]
    fn birkhoff_roundtrip(p in poset(6)) {
        let frame = upset_frame(&p).unwrap();
        prop_assert!(frame.birkhoff_poset().same_order_as(&p));
        let (dual, pairs) = frame.birkhoff_isomorphism().unwrap();
        prop_assert_eq!(dual.len(), frame.len());
        prop_assert_eq!(pairs.len(), frame.len());
    }

    #[test]
    fn prime_descriptions_agree(p in poset(6)) {
        let frame = upset_frame(&p).unwrap();
        let by_definition: BTreeSet<ElemSet> = frame
            .elements()
            .iter()
            .copied()
            .filter(|&a| frame.is_prime(a).unwrap())
            .collect();
        let by_covers: BTreeSet<ElemSet> = frame.primes().into_iter().collect();
        let points: BTreeSet<ElemSet> = (0..p.len()).map(|x| p.all().difference(p.down(x))).collect();
        prop_assert_eq!(&by_definition, &by_covers);
        prop_assert_eq!(&by_covers, &points);
    }

    #[test]
    fn spectral_dictionary(p in poset(5)) {
        let sp = SpectralPoset::new(p, None, None).unwrap();
        torsion_roundtrip(&sp).unwrap();
        thomason_bijection(&sp).unwrap();
        prop_assert!(prime_correspondence(&sp).unwrap().passed());
        prop_assert!(specialisation_check(&sp).unwrap().passed());
        let zoo = topology_zoo(&sp).unwrap();
        prop_assert!(zoo.all_is_alexandrov && zoo.dual);
    }

    #[test]
    fn smaller_families_give_coarser_topologies(p in poset(5), pick in proptest::collection::vec(any::<bool>(), 5)) {
        let fg: Vec<ElemSet> = (0..p.len()).filter(|&i| pick[i]).map(ElemSet::singleton).collect();
        let sp = SpectralPoset::new(p, Some(&fg), None).unwrap();
        let fgt = sp.ziegler_type_topology(Flag::Fg).unwrap();
        let all = sp.ziegler_type_topology(Flag::All).unwrap();
        let c = compare_topologies(&fgt, &all).unwrap();
        prop_assert!(matches!(c, TopologyComparison::Equal | TopologyComparison::StrictlyCoarser));
        thomason_bijection(&sp).unwrap();
        torsion_roundtrip(&sp).unwrap();
    }

    #[test]
    fn quotients_certified(p in poset(5)) {
        let model = CategoryModel::Spectral(p);
        let ser = model.serre_lattice().unwrap();
        for &s in ser.elements() {
            let q = quotient_model(&model, s).unwrap();
            prop_assert!(q.certificate.interval_isomorphism && q.certificate.zariski_topologies_agree);
        }
    }

    #[test]
    fn locality_and_serre_local(p in poset(5)) {
        let model = CategoryModel::Spectral(p.clone());
        let ser = model.serre_lattice().unwrap();
        let local = classify_local(&model).unwrap().is_local();
        prop_assert_eq!(local, ser.is_prime(ser.bottom()).unwrap());
        prop_assert_eq!(local, p.maximal(p.all()).len() == 1);
        for &s in ser.elements() {
            let c = serre_local_characterizations(&model, &model.generator_of(s).unwrap(), 6).unwrap();
            prop_assert!(c.agree(), "{:?}", c);
        }
    }

    #[test]
    fn quotient_functors_compose(p in poset(5), a in 0usize..5, b in 0usize..5) {
        prop_assume!(p.len() >= 2);
        let model = CategoryModel::Spectral(p.clone());
        let s = p.up(a % p.len());
        let f = ExactFunctorModel::quotient(&model, s).unwrap();
        let r = pullback_report(&f).unwrap();
        prop_assert!(r.preserves_order && r.preserves_meets);
        // A localisation keeps joins and primes.
        prop_assert!(r.join_failures.is_empty() && r.sp_failures.is_empty());
        prop_assert!(continuity_check(&f).unwrap().passed());
        let q = f.target().clone();
        let qb = q.base();
        prop_assume!(!qb.is_empty());
        let g = ExactFunctorModel::quotient(&q, qb.up(b % qb.len())).unwrap();
        let h = ExactFunctorModel::composite(f, g).unwrap();
        prop_assert!(composition_check(&h).unwrap());
    }
}
