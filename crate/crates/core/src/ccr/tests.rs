use std::collections::{BTreeMap, BTreeSet};

use num::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::kleingordon::{observables_space, Field, PoissonMap, PoissonSpace};
use crate::lattice::{LatticeSpacetime, Site};
use crate::numeric::{cq, q, Cq, QMatrix};

fn space(form: Vec<Vec<i64>>) -> PoissonSpace {
    let n = form.len();
    let labels = (1..=n).map(|k| format!("e{k}")).collect();
    PoissonSpace::new(labels, QMatrix::from_rows(form.into_iter().map(|r| r.into_iter().map(q).collect()).collect()))
        .unwrap()
}

/// Antisymmetric form from its strict upper triangle.
fn form_from_upper(n: usize, upper: &[i64]) -> Vec<Vec<i64>> {
    let mut f = vec![vec![0; n]; n];
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    for ((i, j), &v) in pairs.zip(upper) {
        f[i][j] = v;
        f[j][i] = -v;
    }
    f
}

fn symplectic_plane() -> CcrAlgebra {
    CcrAlgebra::new(space(vec![vec![0, 1], vec![-1, 0]]))
}

fn i_unit() -> Cq {
    cq(Q::zero(), Q::one())
}

/// A normal form as a sorted list of words with `(re, im)` coefficients.
type Reduction = Vec<(Word, (Q, Q))>;

/// Every normal form reachable by applying the relation in any order.
fn all_reductions(alg: &CcrAlgebra, w: &[usize], memo: &mut BTreeMap<Word, BTreeSet<Reduction>>) -> BTreeSet<Reduction> {
    if let Some(r) = memo.get(w) {
        return r.clone();
    }
    let mut out = BTreeSet::new();
    let spots = redexes(w);
    if spots.is_empty() {
        out.insert(vec![(w.to_vec(), (Q::one(), Q::zero()))]);
    }
    for k in spots {
        let ((swapped, _), (contracted, c)) = alg.rewrite_at(w, k);
        for a in all_reductions(alg, &swapped, memo) {
            for b in all_reductions(alg, &contracted, memo) {
                let mut sum: BTreeMap<Word, Cq> = BTreeMap::new();
                for (u, (re, im)) in &a {
                    *sum.entry(u.clone()).or_insert_with(Cq::zero) += cq(re.clone(), im.clone());
                }
                for (u, (re, im)) in &b {
                    *sum.entry(u.clone()).or_insert_with(Cq::zero) += &c * cq(re.clone(), im.clone());
                }
                out.insert(sum.into_iter().filter(|(_, v)| !v.is_zero()).map(|(u, v)| (u, (v.re, v.im))).collect());
            }
        }
    }
    memo.insert(w.to_vec(), out.clone());
    out
}

fn as_pairs(e: &CcrElement) -> Vec<(Word, (Q, Q))> {
    e.terms().iter().map(|(w, c)| (w.clone(), (c.re.clone(), c.im.clone()))).collect()
}

#[test]
fn letters_and_unit_are_normal() {
    let alg = symplectic_plane();
    for a in 0..2 {
        let g = alg.generator(a).unwrap();
        assert_eq!(alg.normal_form([(&[a][..], Cq::one())]).unwrap(), g);
    }
    assert_eq!(alg.normal_form([(&[][..], Cq::one())]).unwrap(), alg.unit());
    assert_eq!(alg.generator(2).unwrap_err(), CcrError::IndexOutOfRange(2, 2));
}

#[test]
fn defining_relation_reorders_two_letters() {
    let alg = symplectic_plane();
    let e = alg.normal_form([(&[0, 1][..], Cq::one())]).unwrap();
    assert_eq!(e, alg.parse("e2.e1 + (0+1i)*1").unwrap());
    assert_eq!(e.to_string(), "(1+0i)*e2.e1 + (0+1i)*1");
}

#[test]
fn normal_form_agrees_with_every_rewriting_order() {
    let alg = CcrAlgebra::new(space(form_from_upper(4, &[1, -2, 0, 3, 1, -1])));
    let mut memo = BTreeMap::new();
    let words: Vec<Word> = vec![vec![0, 1, 2, 3], vec![0, 3, 1, 2], vec![1, 0, 3, 3], vec![2, 0, 1, 0], vec![0, 0, 1, 1]];
    for w in words {
        let outcomes = all_reductions(&alg, &w, &mut memo);
        assert_eq!(outcomes.len(), 1, "{w:?}");
        let nf = alg.normal_form([(w.as_slice(), Cq::one())]).unwrap();
        assert_eq!(outcomes.into_iter().next().unwrap(), as_pairs(&nf));
    }
}

#[test]
fn unit_is_neutral_and_commutators_are_the_form() {
    let alg = CcrAlgebra::new(space(form_from_upper(3, &[2, -1, 5])));
    let a = alg.parse("(1+2i)*e3.e1 + (0+1i)*1 - 1/2*e2").unwrap();
    assert_eq!(alg.unit().multiply(&a).unwrap(), a);
    assert_eq!(a.multiply(&alg.unit()).unwrap(), a);
    for i in 0..3 {
        for j in 0..3 {
            let c = alg.generator(i).unwrap().commutator(&alg.generator(j).unwrap()).unwrap();
            let tau = alg.space().form().get(i, j).clone();
            assert_eq!(c, alg.scalar(cq(Q::zero(), tau)));
        }
    }
}

#[test]
fn zero_form_block_commutes() {
    let alg = CcrAlgebra::new(space(form_from_upper(3, &[0, 1, 0])));
    let (e1, e2) = (alg.generator(0).unwrap(), alg.generator(1).unwrap());
    let x = e1.multiply(&e1).unwrap().add(&e2).unwrap();
    let y = e2.multiply(&e1).unwrap();
    assert!(x.commutator(&y).unwrap().is_zero());
    assert!(!alg.generator(2).unwrap().commutator(&e1).unwrap().is_zero());
}

#[test]
fn literals_round_trip_and_reject_garbage() {
    let alg = CcrAlgebra::new(space(form_from_upper(3, &[1, 0, -1])));
    let a = alg.parse("(1+2i)*e3.e1 + (0+1i)*1").unwrap();
    assert_eq!(alg.parse(&a.to_string()).unwrap(), a);
    assert_eq!(alg.parse("-e1 + e1").unwrap(), alg.zero());
    assert_eq!(alg.parse("0").unwrap(), alg.zero());
    assert_eq!(alg.parse("2 - (0-1i)").unwrap(), alg.scalar(cq(q(2), q(1))));
    assert!(matches!(alg.parse("e0"), Err(CcrError::Parse(_))));
    assert!(matches!(alg.parse("e1 + "), Err(CcrError::Parse(_))));
    assert!(matches!(alg.parse("x*e1"), Err(CcrError::Parse(_))));
    assert_eq!(alg.parse("e4").unwrap_err(), CcrError::IndexOutOfRange(3, 3));
}

#[test]
fn different_algebras_do_not_mix() {
    let a = symplectic_plane();
    let b = CcrAlgebra::new(space(vec![vec![0, 2], vec![-2, 0]]));
    let x = a.generator(0).unwrap();
    assert_eq!(x.multiply(&b.generator(0).unwrap()).unwrap_err(), CcrError::ParentMismatch);
    assert_eq!(x.add(&b.unit()).unwrap_err(), CcrError::ParentMismatch);
}

#[test]
fn non_poisson_maps_are_refused() {
    let v = space(vec![vec![0, 1], vec![-1, 0]]);
    let doubled = QMatrix::from_rows(vec![vec![q(2), q(0)], vec![q(0), q(1)]]);
    assert!(matches!(CcrMorphism::from_matrix(v.clone(), v.clone(), doubled), Err(CcrError::NotPoisson(_))));
    let swap = QMatrix::from_rows(vec![vec![q(0), q(-1)], vec![q(1), q(0)]]);
    assert!(CcrMorphism::from_matrix(v.clone(), v, swap).is_ok());
}

#[test]
fn identity_map_fixes_elements() {
    let v = space(form_from_upper(3, &[1, 2, 3]));
    let f = CcrMorphism::new(PoissonMap::identity(&v));
    let a = f.src().parse("(1-1i)*e1.e2.e3 + e2").unwrap();
    let image = f.apply(&a).unwrap();
    assert_eq!(image.terms(), a.terms());
}

#[test]
fn disjoint_observables_commute() {
    let m = LatticeSpacetime::slab(12, 0, 6).unwrap();
    let obs = observables_space(&m, &Q::one()).unwrap();
    let alg = CcrAlgebra::new(obs.space().clone());
    let mut left = Field::zero(&m);
    let mut right = Field::zero(&m);
    left.set(Site::new(2, 1), q(1));
    left.set(Site::new(3, 1), q(-2));
    right.set(Site::new(2, 7), q(3));
    right.set(Site::new(1, 7), q(1));
    let a = alg.linear(&obs.coordinates(&left).unwrap()).unwrap();
    let b = alg.linear(&obs.coordinates(&right).unwrap()).unwrap();
    assert!(a.commutator(&b).unwrap().is_zero());
    let aa = a.multiply(&a).unwrap();
    assert!(aa.commutator(&b).unwrap().is_zero());
    // Timelike neighbours do not commute: [δ(3,2), δ(2,2)] = i·1.
    let at = |t, x| alg.linear(&obs.coordinates(&Field::delta(&m, Site::new(t, x)).unwrap()).unwrap()).unwrap();
    assert_eq!(at(3, 2).commutator(&at(2, 2)).unwrap(), alg.scalar(i_unit()));
}

// Random data: small Poisson spaces, maps into them, and elements of degree ≤ 3.

fn any_space(n: usize) -> impl Strategy<Value = PoissonSpace> {
    prop::collection::vec(-2i64..=2, n * (n - 1) / 2).prop_map(move |u| space(form_from_upper(n, &u)))
}

fn any_matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, cols), rows)
        .prop_map(|r| QMatrix::from_rows(r.into_iter().map(|row| row.into_iter().map(q).collect()).collect()))
}

/// A Poisson map `A : (Q^cols, Aᵀ ω A) → tgt`.
fn pullback(tgt: &PoissonSpace, a: QMatrix) -> PoissonMap {
    let form = &(&a.transpose() * tgt.form()) * &a;
    let labels = (1..=a.cols()).map(|k| format!("e{k}")).collect();
    PoissonMap::new(PoissonSpace::new(labels, form).unwrap(), tgt.clone(), a).unwrap()
}

fn any_element_terms(n: usize) -> impl Strategy<Value = Vec<(Word, (i64, i64))>> {
    prop::collection::vec((prop::collection::vec(0..n, 0..=3), (-3i64..=3, -3i64..=3)), 1..4)
}

fn element(alg: &CcrAlgebra, raw: &[(Word, (i64, i64))]) -> CcrElement {
    alg.normal_form(raw.iter().map(|(w, (a, b))| (w.as_slice(), cq(q(*a), q(*b))))).unwrap()
}

/// Normalizes by applying the relation at a pseudo-randomly chosen redex.
fn reduce_randomly(alg: &CcrAlgebra, w: &[usize], choices: &mut impl Iterator<Item = usize>) -> BTreeMap<Word, Cq> {
    let mut pending: Vec<(Word, Cq)> = vec![(w.to_vec(), Cq::one())];
    let mut done: BTreeMap<Word, Cq> = BTreeMap::new();
    while let Some((u, c)) = pending.pop() {
        let spots = redexes(&u);
        if spots.is_empty() {
            *done.entry(u).or_insert_with(Cq::zero) += c;
            continue;
        }
        let k = spots[choices.next().unwrap_or(0) % spots.len()];
        let ((s, _), (t, d)) = alg.rewrite_at(&u, k);
        pending.push((s, c.clone()));
        if !d.is_zero() {
            pending.push((t, c * d));
        }
    }
    done.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_strategies_reach_the_same_normal_form(
        v in any_space(4),
        w in prop::collection::vec(0usize..4, 0..=5),
        choices in prop::collection::vec(0usize..16, 64),
    ) {
        let alg = CcrAlgebra::new(v);
        let nf = alg.normal_form([(w.as_slice(), Cq::one())]).unwrap();
        let random = reduce_randomly(&alg, &w, &mut choices.into_iter().cycle());
        prop_assert_eq!(nf.terms(), &random);
        prop_assert!(nf.terms().keys().all(|u| is_normal(u)));
    }

    #[test]
    fn star_reverses_products(v in any_space(3), x in any_element_terms(3), y in any_element_terms(3)) {
        let alg = CcrAlgebra::new(v);
        let (a, b) = (element(&alg, &x), element(&alg, &y));
        prop_assert_eq!(a.multiply(&b).unwrap().star(), b.star().multiply(&a.star()).unwrap());
        prop_assert_eq!(a.star().star(), a.clone());
        // Double expansion: conjugate-reverse the raw words of the product.
        let raw: Vec<(Word, Cq)> = x.iter().flat_map(|(u, (p, r))| y.iter().map(move |(w, (s, t))| {
            let word: Word = u.iter().chain(w).rev().copied().collect();
            (word, (cq(q(*p), q(*r)) * cq(q(*s), q(*t))).conj())
        })).collect();
        let expanded = alg.normal_form(raw.iter().map(|(w, c)| (w.as_slice(), c.clone()))).unwrap();
        prop_assert_eq!(a.multiply(&b).unwrap().star(), expanded);
    }

    #[test]
    fn multiplication_is_associative(v in any_space(3), x in any_element_terms(3), y in any_element_terms(3), z in any_element_terms(3)) {
        let alg = CcrAlgebra::new(v);
        let (a, b, c) = (element(&alg, &x), element(&alg, &y), element(&alg, &z));
        prop_assert_eq!(
            a.multiply(&b).unwrap().multiply(&c).unwrap(),
            a.multiply(&b.multiply(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn maps_are_unital_star_homomorphisms(
        w in any_space(3),
        a in any_matrix(3, 2),
        x in any_element_terms(2),
        y in any_element_terms(2),
    ) {
        let f = CcrMorphism::new(pullback(&w, a));
        let (p, r) = (element(f.src(), &x), element(f.src(), &y));
        let prod = f.apply(&p.multiply(&r).unwrap()).unwrap();
        prop_assert_eq!(prod, f.apply(&p).unwrap().multiply(&f.apply(&r).unwrap()).unwrap());
        prop_assert_eq!(f.apply(&p.star()).unwrap(), f.apply(&p).unwrap().star());
        prop_assert_eq!(f.apply(&f.src().unit()).unwrap(), f.tgt().unit());
    }

    #[test]
    fn maps_compose(
        x_space in any_space(3),
        b in any_matrix(3, 3),
        a in any_matrix(3, 2),
        terms in any_element_terms(2),
    ) {
        let g_map = pullback(&x_space, b);
        let f_map = pullback(g_map.src(), a);
        let g = CcrMorphism::new(g_map);
        let f = CcrMorphism::new(f_map);
        let gf = g.after(&f).unwrap();
        let e = element(f.src(), &terms);
        let stepwise = g.apply(&f.apply(&e).unwrap()).unwrap();
        let direct = gf.apply(&e).unwrap();
        prop_assert_eq!(stepwise.terms(), direct.terms());
    }

    #[test]
    fn invertible_maps_have_inverse_quantizations(v in any_space(3), a in any_matrix(3, 3), terms in any_element_terms(3)) {
        prop_assume!(a.inverse().is_some());
        let f = CcrMorphism::new(pullback(&v, a));
        let inv = f.inverse().unwrap();
        let e = element(f.src(), &terms);
        let back = inv.apply(&f.apply(&e).unwrap()).unwrap();
        prop_assert_eq!(back.terms(), e.terms());
    }
}
