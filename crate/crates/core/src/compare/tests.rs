use num::Zero;

use super::*;
use crate::ccr::CcrMorphism;
use crate::kleingordon::{propagator_on, Field, PoissonMap, PoissonSpace};
use crate::lattice::{LatticeSpacetime, LocMorphism, Shift, Site};
use crate::lbord::{hcompose, BordObject, Bordism, Rows};
use crate::numeric::{q, qf, QMatrix, Q};

fn config(l: u32, t_max: i64) -> CompareConfig {
    CompareConfig { l, t_max, ..CompareConfig::default() }
}

fn assert_passes(report: &Report) {
    let bad: Vec<_> = report.failures().map(|r| format!("{} {}", r.check, r.instance_key)).collect();
    assert!(bad.is_empty(), "failed: {bad:?}");
    assert!(!report.is_empty());
}

fn slab(l: u32, lo: i64, hi: i64) -> LatticeSpacetime {
    LatticeSpacetime::slab(l, lo, hi).unwrap()
}

fn obj(l: u32, lo: i64, hi: i64, sigma: i64) -> BordObject {
    BordObject::slab(l, lo, hi, sigma).unwrap()
}

/// `C(M)` with `τ(δa, δb) = (G δb)(a)` and no quotient by the image of `P`:
/// a functor satisfying causality but not time-slice.
struct UnquotientedAqft {
    l: u32,
}

impl UnquotientedAqft {
    fn space(&self, m: &LatticeSpacetime) -> PoissonSpace {
        let sites: Vec<Site> = m.sites().iter().copied().collect();
        let mut form = QMatrix::zeros(sites.len(), sites.len());
        for (j, &b) in sites.iter().enumerate() {
            let g = propagator_on(m, &Field::delta(m, b).unwrap(), &Q::zero()).unwrap();
            for (i, &a) in sites.iter().enumerate() {
                form.set(i, j, g.get(a));
            }
        }
        PoissonSpace::new(sites.iter().map(|s| format!("δ{s}")).collect(), form).unwrap()
    }
}

impl Aqft for UnquotientedAqft {
    fn circumference(&self) -> u32 {
        self.l
    }

    fn algebra(&self, m: &LatticeSpacetime) -> Result<CcrAlgebra, CompareError> {
        Ok(CcrAlgebra::new(self.space(m)))
    }

    fn morphism(&self, f: &LocMorphism) -> Result<CcrMorphism, CompareError> {
        let (src, tgt) = (f.source(), f.target());
        let tgt_sites: Vec<Site> = tgt.sites().iter().copied().collect();
        let mut matrix = QMatrix::zeros(tgt.len(), src.len());
        for (j, &s) in src.sites().iter().enumerate() {
            let i = tgt_sites.iter().position(|&t| t == f.apply(s)).unwrap();
            matrix.set(i, j, q(1));
        }
        Ok(CcrMorphism::new(PoissonMap::new(self.space(src), self.space(tgt), matrix)?))
    }
}

#[test]
fn config_reads_toml_and_json_and_rejects_bad_bounds() {
    let c = CompareConfig::from_toml("L = 6\nT_max = 10\nmass_squared = \"1/4\"\nseed = 7\nmax_degree = 2\n").unwrap();
    assert_eq!((c.l, c.t_max, c.m0sq().clone(), c.seed, c.max_degree), (6, 10, qf(1, 4), 7, 2));
    let j = CompareConfig::from_json(r#"{"L":0,"T_max":5,"mass_squared":"1","seed":1,"max_degree":3}"#).unwrap();
    assert_eq!(j.l, 0);
    assert!(matches!(CompareConfig::from_toml("L = 2\nT_max = 10\nmass_squared = \"0\"\nseed = 0\nmax_degree = 3"), Err(CompareError::Config(_))));
    assert!(matches!(CompareConfig::from_json(r#"{"L":8,"T_max":3,"mass_squared":"0","seed":0,"max_degree":3}"#), Err(CompareError::Config(_))));
    assert!(matches!(CompareConfig::from_json(r#"{"L":8,"T_max":9,"mass_squared":"-1/0","seed":0,"max_degree":3}"#), Err(CompareError::Config(_))));
    assert!(matches!(CompareConfig::from_toml("L = 8\nT_max = 9\nmass_squared = \"0\"\nseed = 0\nmax_degree = 3\nextra = 1"), Err(CompareError::Config(_))));
}

#[test]
fn kg_aqft_sends_identities_to_identities() {
    let a = KgAqft::new(5, Q::zero());
    let m = slab(5, 0, 3);
    let id = a.morphism(&LocMorphism::identity(&m)).unwrap();
    assert!(id.map().matrix().is_identity());
    assert_eq!(id.src(), &a.algebra(&m).unwrap());
}

#[test]
fn kg_aqft_is_causal_on_disjoint_diamonds() {
    let a = KgAqft::new(8, qf(1, 4));
    let pairs = diamond_pairs(8, 8, 20).unwrap();
    assert!(pairs.len() >= 20);
    assert_passes(&check_einstein_causality(&a, &pairs).unwrap());
    // Overlapping shadows are refused rather than checked.
    let m = slab(8, 0, 8);
    let d = LatticeSpacetime::diamond(8, Site::new(0, 0), 1).unwrap();
    let e = LatticeSpacetime::diamond(8, Site::new(3, 0), 1).unwrap();
    let pair = (LocMorphism::inclusion(&d, &m).unwrap(), LocMorphism::inclusion(&e, &m).unwrap());
    assert!(matches!(check_einstein_causality(&a, &[pair]), Err(CompareError::Config(_))));
}

#[test]
fn timelike_diamonds_do_not_commute() {
    let a = KgAqft::new(8, Q::zero());
    let m = slab(8, 0, 8);
    let low = LocMorphism::inclusion(&LatticeSpacetime::diamond(8, Site::new(0, 0), 1).unwrap(), &m).unwrap();
    let high = LocMorphism::inclusion(&LatticeSpacetime::diamond(8, Site::new(3, 0), 1).unwrap(), &m).unwrap();
    let (x, y) = (a.morphism(&low).unwrap(), a.morphism(&high).unwrap());
    let any_nonzero = (0..x.src().dim()).any(|i| {
        (0..y.src().dim()).any(|j| {
            let u = x.apply(&x.src().generator(i).unwrap()).unwrap();
            let v = y.apply(&y.src().generator(j).unwrap()).unwrap();
            !u.commutator(&v).unwrap().is_zero()
        })
    });
    assert!(any_nonzero);
}

#[test]
fn cauchy_inclusion_is_invertible() {
    let a = KgAqft::new(6, q(1));
    let f = LocMorphism::new(slab(6, 0, 2), slab(6, -2, 5), Shift::new(1, 4)).unwrap();
    let report = check_time_slice(&a, std::slice::from_ref(&f)).unwrap();
    assert_passes(&report);
    let g = a.morphism(&f).unwrap();
    let back = g.inverse().unwrap();
    assert!(g.map().after(back.map()).unwrap().matrix().is_identity());
    // A diamond inclusion is not Cauchy.
    let d = LocMorphism::inclusion(&LatticeSpacetime::diamond(6, Site::new(0, 0), 1).unwrap(), &slab(6, 0, 4)).unwrap();
    assert_eq!(check_time_slice(&a, &[d]).unwrap_err(), CompareError::NotCauchy);
}

#[test]
fn kg_fft_identity_and_stacked_composite() {
    let f = KgFft::new(4, qf(1, 4));
    let o0 = obj(4, 0, 3, 1);
    let unit = f.morphism(&Bordism::unit(o0)).unwrap();
    assert!(unit.map().matrix().is_identity());
    // Two height-2 bordisms stacked into one of height 4.
    let o1 = obj(4, 0, 2, 0);
    let b0 = Bordism::new(o0, o1, Rows::new(0, 6), Rows::new(0, 3), Rows::new(0, 2), Shift::new(0, 1), Shift::new(3, 2))
        .unwrap();
    let b1 = Bordism::new(o1, o0, Rows::new(0, 5), Rows::new(0, 2), Rows::new(0, 3), Shift::new(0, 0), Shift::new(1, 3))
        .unwrap();
    let glued = hcompose(&b1, &b0).unwrap();
    assert_eq!(glued.height(), b0.height() + b1.height());
    let lhs = f.morphism(&glued).unwrap();
    let rhs = f.morphism(&b1).unwrap().after(&f.morphism(&b0).unwrap()).unwrap();
    assert_eq!(lhs.map().matrix(), rhs.map().matrix());
}

#[test]
fn fft_from_aqft_is_identity_on_units_and_a_on_companions() {
    let a = KgAqft::new(5, Q::zero());
    let fa = fft_from_aqft(&a).unwrap();
    let o = obj(5, 0, 3, 0);
    assert!(fa.morphism(&Bordism::unit(o)).unwrap().map().matrix().is_identity());
    // Companion of the germ of g : [0,3] → [2,7], (dt, dx) = (3, 2).
    let g = LocMorphism::new(slab(5, 0, 3), slab(5, 2, 7), Shift::new(3, 2)).unwrap();
    let o2 = obj(5, 2, 7, 3);
    let companion = Bordism::new(o, o2, Rows::new(2, 7), Rows::new(0, 3), Rows::new(2, 7), g.shift(), Shift::IDENTITY)
        .unwrap();
    let lhs = fa.morphism(&companion).unwrap();
    assert_eq!(lhs.map().matrix(), a.morphism(&g).unwrap().map().matrix());
}

#[test]
fn missing_time_slice_is_reported() {
    let bad = UnquotientedAqft { l: 6 };
    // Causality still holds for the unquotiented functor.
    let pairs = diamond_pairs(6, 6, 2).unwrap();
    assert_passes(&check_einstein_causality(&bad, &pairs).unwrap());
    assert!(matches!(fft_from_aqft(&bad), Err(CompareError::TimeSliceViolation(_))));
}

#[test]
fn suites_pass_on_a_small_lattice() {
    let c = CompareConfig { mass_squared: Fraction(qf(1, 4)), ..config(4, 7) };
    let a = KgAqft::new(4, qf(1, 4));
    assert_passes(&check_aqft_axioms(&a, &c, 6).unwrap());
    assert_passes(&check_fft_functoriality(&KgFft::new(4, qf(1, 4)), &c, 4).unwrap());
    assert_passes(&check_fft_functoriality(&fft_from_aqft(&a).unwrap(), &c, 4).unwrap());
    assert_passes(&check_class_independence(&KgFft::new(4, qf(1, 4)), &c, 5).unwrap());
    assert_passes(&check_class_independence(&fft_from_aqft(&a).unwrap(), &c, 5).unwrap());
}

#[test]
fn scalar_comparison_square_commutes() {
    let c = CompareConfig { mass_squared: Fraction(q(1)), max_degree: 2, ..config(3, 6) };
    let report = check_scalar_comparison(&c, 12, 3).unwrap();
    assert_passes(&report);
    assert!(report.of("scalar-comparison").count() >= 12);
    assert_eq!(report.of("scalar-comparison-elements").count(), 3);
}

#[test]
fn reconstruction_and_roundtrips_hold() {
    assert_passes(&check_reconstruction(&config(3, 6), 5).unwrap());
    assert_passes(&check_one_dimensional_roundtrip(&qf(1, 4), 4).unwrap());
}

#[test]
fn reconstruction_refuses_non_invertible_ffts() {
    struct Collapse;
    impl Fft for Collapse {
        fn circumference(&self) -> u32 {
            0
        }
        fn algebra(&self, _: &BordObject) -> Result<CcrAlgebra, CompareError> {
            Ok(CcrAlgebra::new(PoissonSpace::new(vec!["a".into(), "b".into()], QMatrix::zeros(2, 2)).unwrap()))
        }
        fn morphism(&self, b: &Bordism) -> Result<CcrMorphism, CompareError> {
            let alg = self.algebra(&b.src())?;
            let map = PoissonMap::new(alg.space().clone(), alg.space().clone(), QMatrix::zeros(2, 2))?;
            Ok(CcrMorphism::between(map, &alg, &alg)?)
        }
    }
    assert!(matches!(reconstruct_aqft(Collapse), Err(CompareError::TimeSliceViolation(_))));
}

#[test]
fn reconstructed_aqft_refuses_non_cauchy_and_non_slab_input() {
    let rec = reconstruct_aqft(KgFft::new(4, Q::zero())).unwrap();
    let d = LatticeSpacetime::diamond(4, Site::new(0, 0), 1).unwrap();
    assert_eq!(rec.algebra(&d).unwrap_err(), CompareError::NotASlab);
    let j = LocMorphism::inclusion(&slab(4, 1, 3), &slab(4, 0, 4)).unwrap();
    assert!(rec.morphism(&j).is_ok());
    let e = LocMorphism::inclusion(&d, &slab(4, 0, 4)).unwrap();
    assert_eq!(rec.morphism(&e).unwrap_err(), CompareError::NotCauchy);
}

#[test]
fn sign_twist_is_trivial_exactly_on_cauchy_morphisms() {
    let a = KgAqft::new(5, Q::zero());
    let t = SignTwisted::new(&a);
    let d = LatticeSpacetime::diamond(5, Site::new(0, 0), 1).unwrap();
    assert_eq!(t.sign(&d).unwrap(), -1);
    assert_eq!(t.sign(&slab(5, 0, 3)).unwrap(), 1);
    let j = LocMorphism::inclusion(&d, &slab(5, 0, 3)).unwrap();
    assert!(t.is_twisted(&j).unwrap());
    assert_eq!(t.morphism(&j).unwrap().map().matrix(), &-a.morphism(&j).unwrap().map().matrix());
    let g = LocMorphism::inclusion(&slab(5, 0, 2), &slab(5, 0, 3)).unwrap();
    assert!(!t.is_twisted(&g).unwrap());
}

#[test]
fn witnesses_and_probes_pass() {
    let c = config(4, 6);
    let report = check_non_fullness(&c, 5).unwrap();
    assert_passes(&report);
    assert_eq!(report.of("twist-differs-off-cauchy").count(), 1);
    assert_passes(&check_time_translation_witness(&c, 5).unwrap());
    assert_passes(&check_faithfulness_probe(&c, 5).unwrap());
}

#[test]
fn reports_are_deterministic_in_the_seed() {
    let c = config(3, 5);
    let one = serde_json::to_string(&check_reconstruction(&c, 3).unwrap()).unwrap();
    let two = serde_json::to_string(&check_reconstruction(&c, 3).unwrap()).unwrap();
    assert_eq!(one, two);
    let other = CompareConfig { seed: 99, ..c };
    assert_ne!(random_bordisms(&config(3, 5), 6), random_bordisms(&other, 6));
}

#[test]
fn random_bordisms_have_distinct_classes_and_thick_collars() {
    let c = config(6, 10);
    let bs = random_bordisms(&c, 30);
    assert_eq!(bs.len(), 30);
    let keys: std::collections::BTreeSet<_> = bs.iter().map(crate::lbord::class_key).collect();
    assert_eq!(keys.len(), 30);
    assert!(bs.iter().all(|b| b.v0().len() >= 3 && b.v1().len() >= 3 && b.n().lo >= 0 && b.n().hi <= 10));
}
