use std::sync::Arc;

use super::*;
use crate::frame::{ElemSet, FinitePoset};
use crate::quiverrep::{isoclasses, BoundQuiver, Representation};

fn s(x: &str) -> String {
    x.to_string()
}

fn a2() -> Arc<BoundQuiver> {
    Arc::new(BoundQuiver::new(vec![s("1"), s("2")], &[(s("a"), s("1"), s("2"))], &[], 2).unwrap())
}

fn a3_sink() -> Arc<BoundQuiver> {
    Arc::new(
        BoundQuiver::new(
            vec![s("0"), s("1"), s("2")],
            &[(s("a"), s("1"), s("0")), (s("b"), s("2"), s("0"))],
            &[],
            2,
        )
        .unwrap(),
    )
}

fn one_vertex() -> Arc<BoundQuiver> {
    Arc::new(BoundQuiver::new(vec![s("v")], &[], &[], 3).unwrap())
}

fn chain2() -> CategoryModel {
    CategoryModel::Spectral(FinitePoset::from_covers(vec![s("g"), s("m")], &[("g", "m")]).unwrap())
}

fn fan(n: usize) -> CategoryModel {
    let mut labels = vec![s("g")];
    let mut covers = vec![];
    for i in 1..=n {
        labels.push(format!("p{i}"));
        covers.push((s("g"), format!("p{i}")));
    }
    CategoryModel::Spectral(FinitePoset::from_covers(labels, &covers).unwrap())
}

fn diamond() -> CategoryModel {
    CategoryModel::Spectral(
        FinitePoset::from_covers(
            vec![s("g"), s("p1"), s("p2"), s("m")],
            &[("g", "p1"), ("g", "p2"), ("p1", "m"), ("p2", "m")],
        )
        .unwrap(),
    )
}

fn set(model: &CategoryModel, labels: &[&str]) -> ElemSet {
    model.base().set_of(labels).unwrap()
}

fn rep(r: &Representation) -> ModelObject {
    ModelObject::Rep(r.clone())
}

#[test]
fn lattice_sizes() {
    assert_eq!(chain2().serre_lattice().unwrap().len(), 3);
    for n in 1..=6 {
        assert_eq!(fan(n).serre_lattice().unwrap().len(), (1 << n) + 1);
    }
    assert_eq!(CategoryModel::Length(a3_sink()).serre_lattice().unwrap().len(), 8);
}

#[test]
fn generated_subcategories() {
    let m = CategoryModel::Length(a2());
    let p1 = Representation::projective(a2(), 0).unwrap();
    assert_eq!(m.serre_generated(&[rep(&p1)]).unwrap(), set(&m, &["1", "2"]));
    assert_eq!(m.serre_generated(&[]).unwrap(), ElemSet::EMPTY);
    let q = a3_sink();
    let m3 = CategoryModel::Length(q.clone());
    let simples = Representation::simples(&q);
    let s12 = m3.serre_generated(&[rep(&simples[1]), rep(&simples[2])]).unwrap();
    assert!(!m3.contains(s12, &rep(&simples[0])).unwrap());
    // Cross-check support membership against the chain search.
    let candidates = isoclasses(&q, 3).unwrap();
    assert!(cross_check_generated(&[simples[1].clone(), simples[2].clone()], &candidates, 6).is_ok());
}

#[test]
fn object_kind_mismatch() {
    let m = chain2();
    let p1 = Representation::projective(a2(), 0).unwrap();
    assert!(m.support(&rep(&p1)).is_err());
    let l = CategoryModel::Length(a3_sink());
    assert!(l.support(&rep(&p1)).is_err());
}

#[test]
fn primes_of_models() {
    let d = diamond();
    let spd = sp(&d).unwrap();
    assert_eq!(spd.pairs.len(), 4);
    let c = chain2();
    let spc = sp(&c).unwrap();
    let g = spc.pairs[0].1;
    let mm = spc.pairs[1].1;
    assert_eq!(g, set(&c, &["m"]));
    assert_eq!(mm, ElemSet::EMPTY);
    let l = CategoryModel::Length(a3_sink());
    let spl = sp(&l).unwrap();
    assert!(spl.primes().iter().all(|p| p.len() == 2));
}

#[test]
fn locality() {
    let c = chain2();
    match classify_local(&c).unwrap() {
        LocalityVerdict::Case1 { simple, minimal } => {
            assert_eq!(simple, "R/m");
            assert_eq!(minimal, set(&c, &["m"]));
        }
        v => panic!("{v:?}"),
    }
    let f = fan(3);
    match classify_local(&f).unwrap() {
        LocalityVerdict::NotLocal { witness: Some((a, b)) } => {
            assert_eq!((a.len(), b.len()), (1, 1));
            assert!(a.is_disjoint(b));
        }
        v => panic!("{v:?}"),
    }
    assert!(classify_local(&CategoryModel::Length(one_vertex())).unwrap().is_local());
    let empty = CategoryModel::Spectral(FinitePoset::antichain(Vec::<String>::new()).unwrap());
    assert_eq!(classify_local(&empty).unwrap(), LocalityVerdict::NotLocal { witness: None });
}

#[test]
fn quotients() {
    let q = a3_sink();
    let m = CategoryModel::Length(q.clone());
    let by = set(&m, &["1", "2"]);
    let qm = quotient_model(&m, by).unwrap();
    assert_eq!(qm.model.serre_lattice().unwrap().len(), 2);
    assert!(qm.certificate.interval_isomorphism && qm.certificate.zariski_topologies_agree);

    let id = quotient_model(&m, ElemSet::EMPTY).unwrap();
    assert_eq!(id.model.base().labels(), m.base().labels());

    let d = diamond();
    let qd = quotient_model(&d, set(&d, &["m"])).unwrap();
    assert_eq!(qd.model.base().sorted_labels_of(qd.model.base().all()), vec!["g", "p1", "p2"]);
    assert_eq!(qd.certificate.interval_size, 5);
    assert!(qd.certificate.interval_isomorphism && qd.certificate.zariski_topologies_agree);

    assert!(quotient_model(&d, set(&d, &["g"])).is_err());
}

#[test]
fn zariski_of_chain() {
    let c = chain2();
    let z = zariski_locale(&c).unwrap();
    let els = z.ser.elements().to_vec();
    let opens: Vec<usize> = els.iter().map(|&e| z.basic_open(e).unwrap().len()).collect();
    assert_eq!(opens, vec![3, 2, 1]);
    let pow2 = CategoryModel::Length(Arc::new(
        BoundQuiver::new(vec![s("x"), s("y")], &[], &[], 2).unwrap(),
    ));
    assert_eq!(zariski_locale(&pow2).unwrap().locale.len(), 6);
    let empty = CategoryModel::Spectral(FinitePoset::antichain(Vec::<String>::new()).unwrap());
    assert_eq!(zariski_locale(&empty).unwrap().locale.len(), 2);
}

#[test]
fn serre_local_objects() {
    let q = a2();
    let m = CategoryModel::Length(q.clone());
    let s1 = Representation::simple(q.clone(), 0);
    let p1 = Representation::projective(q.clone(), 0).unwrap();
    assert!(is_serre_local(&m, &rep(&s1), 6).unwrap());
    assert!(!is_serre_local(&m, &rep(&p1), 6).unwrap());
    let d = diamond();
    let spec = d.base();
    let basics = serre_local_basics(&d).unwrap();
    let principal: Vec<ElemSet> = (0..spec.len()).map(|x| spec.up(x)).collect();
    assert_eq!(basics.len(), principal.len());
    assert!(basics.iter().all(|b| principal.contains(b)));
}

#[test]
fn s_simplicity() {
    let q = a2();
    let m = CategoryModel::Length(q.clone());
    let s1 = Representation::simple(q.clone(), 0);
    let p1 = Representation::projective(q.clone(), 0).unwrap();
    let s2set = set(&m, &["2"]);
    assert!(is_s_simple(&m, &p1, s2set, 6).unwrap());
    assert!(no_intermediate_check(&m, &p1, s2set, 6).unwrap());
    assert!(no_intermediate_check(&m, &s1, ElemSet::EMPTY, 6).unwrap());
    assert!(no_intermediate_check(&m, &p1, ElemSet::EMPTY, 6).is_err());

    let ss = s1.power(2);
    assert!(is_serre_local(&m, &rep(&ss), 6).unwrap());
    assert!(!is_quasisimple(&m, &ss, 6).unwrap());
    assert!(is_quasisimple(&m, &s1, 6).unwrap());

    let one = CategoryModel::Length(one_vertex());
    let sv = Representation::simple(one_vertex(), 0);
    assert!(no_intermediate_check(&one, &sv, ElemSet::EMPTY, 6).unwrap());

    assert!(is_s_simple(&chain2(), &s1, ElemSet::EMPTY, 6).is_err());
}

#[test]
fn maximal_avoiding_s0() {
    let q = a3_sink();
    let m = CategoryModel::Length(q.clone());
    let s0 = Representation::simple(q, 0);
    assert_eq!(maximal_avoiding(&m, &rep(&s0)).unwrap(), vec![set(&m, &["1", "2"])]);
}

#[test]
fn generic_points() {
    assert_eq!(generic_point_correspondence(&diamond()).unwrap().len(), 4);
    assert_eq!(generic_point_correspondence(&fan(3)).unwrap().len(), 4);
    let one = CategoryModel::Spectral(FinitePoset::antichain(vec![s("p")]).unwrap());
    assert_eq!(generic_point_correspondence(&one).unwrap().len(), 1);
    assert!(generic_point_correspondence(&CategoryModel::Length(a2())).is_err());
}

#[test]
fn exact_subcategory_validation() {
    let q = a3_sink();
    let p1 = Representation::projective(q.clone(), 1).unwrap();
    let p2 = Representation::projective(q.clone(), 2).unwrap();
    let p0 = Representation::projective(q.clone(), 0).unwrap();
    let ok = ExactSubModel::new(q.clone(), vec![s("P1"), s("P2")], vec![p1.clone(), p2.clone()]).unwrap();
    let m = CategoryModel::ExactSub(ok.clone());
    assert!(matches!(classify_local(&m).unwrap(), LocalityVerdict::NotLocal { witness: Some(_) }));
    let sum = p1.direct_sum(&p2).unwrap().direct_sum(&p1).unwrap();
    assert_eq!(ok.multiplicities(&sum).unwrap(), vec![2, 1]);
    assert!(ok.multiplicities(&p0).is_err());
    // P0 = S_0 maps into P1, so the two are not orthogonal.
    assert!(ExactSubModel::new(q, vec![s("P0"), s("P1")], vec![p0, p1]).is_err());
}
