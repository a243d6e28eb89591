//! End-to-end acceptance checks, one per criterion, each printing a single
//! pass/fail line. All comparisons are exact.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use aqft_fft::ccr::{CcrElement, CcrMorphism};
use aqft_fft::compare::{
    check_aqft_axioms, check_einstein_causality, check_non_fullness, check_one_dimensional_roundtrip,
    check_reconstruction, check_scalar_comparison, check_time_slice, check_time_translation_witness, diamond_pairs,
    fft_from_aqft, random_bordisms, random_cauchy_morphisms, reconstruct_aqft, Aqft, CompareConfig, Fft, KgAqft, KgFft,
    Report, SignTwisted,
};
use aqft_fft::kleingordon::{apply_p, green_advanced, green_retarded, iso_chain, Field};
use aqft_fft::lattice::{period, CauchyRow, LatticeSpacetime, LocMorphism, Site, SiteSet};
use aqft_fft::lbord::{
    canonical_globular, class_key, companion, export_instance, hcompose, truncate, weak_inverse, Bordism, Germ,
    InstanceConfig, LBordInstance, TwoCell,
};
use aqft_fft::numeric::{cq, q, qf, QMatrix, Q};
use aqft_fft::pseudocat::{
    check_adjunction, check_coherence, companion_identities_hold, count_pseudofunctors_into_iota, enumerate_functors,
    find_companion, generators, iota, tau,
};
use aqft_fft::Fraction;
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn masses() -> [Q; 3] {
    [Q::zero(), qf(1, 4), q(1)]
}

fn config(l: u32, t_max: i64, m0sq: Q, seed: u64) -> CompareConfig {
    CompareConfig { l, t_max, mass_squared: Fraction(m0sq), seed, max_degree: 3 }
}

fn instances() -> Vec<(&'static str, LBordInstance)> {
    vec![
        ("one point", export_instance(&InstanceConfig::one_dimensional()).unwrap()),
        ("L=3", export_instance(&InstanceConfig::two_dimensional(3)).unwrap()),
    ]
}

fn assert_report(report: &Report) {
    assert!(!report.is_empty());
    if let Some(f) = report.failures().next() {
        panic!("{} [{}]: {} vs {}", f.check, f.instance_key, f.lhs, f.rhs);
    }
}

fn count(report: &Report, check: &str) -> usize {
    report.of(check).count()
}

/// Cyclic spatial distance on the cylinder of circumference `l`.
fn spatial_distance(a: i64, b: i64, l: u32) -> i64 {
    let p = period(l);
    let d = (a - b).rem_euclid(p);
    d.min(p - d)
}

/// `b ∈ J⁺(a)` inside a slab, from the light-cone inequality.
fn in_future_cone(a: Site, b: Site, l: u32) -> bool {
    b.t >= a.t && spatial_distance(a.x, b.x, l) <= b.t - a.t
}

fn criterion_1_coherence() -> String {
    let mut laws = 0;
    for (name, c) in generators::suite(3) {
        let r = check_coherence(&iota(&c).pseudo);
        assert!(r.all_pass(), "iota({name}): {:?}", r.failures().next());
        laws += r.entries.len();
    }
    for (name, inst) in instances() {
        let r = check_coherence(&inst.pseudo);
        assert!(r.all_pass(), "{name}: {:?}", r.failures().next());
        for law in ["globularity", "pentagon", "unity_triangle", "interchange"] {
            assert!(r.get(law).is_some(), "{name}: {law} not checked");
        }
        laws += r.entries.len();
    }
    format!("{laws} law checks on iota(suite) and the bounded lattice instances")
}

fn criterion_2_adjunction() -> String {
    let suite = generators::suite(4);
    for (name, c) in &suite {
        let t = tau(&iota(c).pseudo).unwrap();
        assert!(t.category.same_tables(c), "tau(iota({name})) differs");
    }
    let d = generators::cyclic_with_collapsing_arrow(3);
    for (name, inst) in instances() {
        let r = check_adjunction(&d, &inst.pseudo);
        assert!(r.all_pass(), "{name}: {:?}", r.failures().next());
        for law in ["unit_pseudofunctor", "triangle_tau", "triangle_iota", "hom_set_bijection"] {
            assert!(r.get(law).is_some());
        }
        let lhs = count_pseudofunctors_into_iota(&inst.pseudo, &d).unwrap();
        let rhs = enumerate_functors(&tau(&inst.pseudo).unwrap().category, &d).len();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, 4, "{name}");
    }
    format!("tau iota = id on {} categories; unit and triangles on both instances", suite.len())
}

fn criterion_3_companions() -> String {
    let mut germs = 0;
    for (name, inst) in instances() {
        for (gi, g) in inst.germs.iter().enumerate() {
            let found = find_companion(&inst.pseudo, gi).unwrap();
            assert!(companion_identities_hold(&inst.pseudo, &found), "{name} germ {g}");
            let c = companion(g);
            assert_eq!(class_key(&inst.bordisms[found.horizontal]), class_key(&c.horizontal));
            assert_eq!((c.up.cell_source(), c.up.cell_target()), (*g, Germ::identity(g.tgt())));
            assert_eq!((c.down.cell_source(), c.down.cell_target()), (Germ::identity(g.src()), *g));
            assert_eq!(c.up.vcompose(&c.down).unwrap(), TwoCell::unit(g));
            let inv = weak_inverse(g);
            for (composite, unit) in [
                (hcompose(&inv, &c.horizontal).unwrap(), Bordism::unit(g.src())),
                (hcompose(&c.horizontal, &inv).unwrap(), Bordism::unit(g.tgt())),
            ] {
                let cell = canonical_globular(&composite, &unit).unwrap();
                assert!(cell.is_globular());
                assert_eq!(class_key(&composite), class_key(&unit));
            }
            germs += 1;
        }
        let t = truncate(&inst);
        assert_eq!(t.class_of.len(), inst.bordisms.len());
    }
    format!("{germs} germs: companion identities and weak inverses in the homotopy category")
}

fn criterion_4_green() -> String {
    let mut checked = 0usize;
    for l in 0..=12u32 {
        for t in 2..=16i64 {
            let m = LatticeSpacetime::slab(l, 0, t).unwrap();
            let interior = m.stencil_interior();
            for m0sq in masses() {
                for p in &interior {
                    let d = Field::delta(&m, *p).unwrap();
                    let plus = green_retarded(&m, &d, &m0sq).unwrap();
                    let minus = green_advanced(&m, &d, &m0sq).unwrap();
                    let target = d.restrict(&interior);
                    assert_eq!(apply_p(&m, &plus, &m0sq), target, "P G+ at {p}, L={l}, T={t}");
                    assert_eq!(apply_p(&m, &minus, &m0sq), target, "P G- at {p}, L={l}, T={t}");
                    assert!(plus.support().iter().all(|s| in_future_cone(*p, *s, l)), "supp G+ at {p}");
                    assert!(minus.support().iter().all(|s| in_future_cone(*s, *p, l)), "supp G- at {p}");
                    let stencil_inside = aqft_fft::lattice::stencil(*p, l).iter().all(|s| interior.contains(s));
                    if stencil_inside {
                        let p_psi = apply_p(&m, &d, &m0sq);
                        assert_eq!(green_retarded(&m, &p_psi, &m0sq).unwrap(), d, "G+ P at {p}");
                        assert_eq!(green_advanced(&m, &p_psi, &m0sq).unwrap(), d, "G- P at {p}");
                    }
                    checked += 1;
                }
            }
        }
    }
    format!("{checked} point sources over L <= 12, T <= 16 and three masses")
}

/// `[[0, -I], [I, 0]]` on `(φ, π)` coordinates.
fn expected_data_form(n: usize) -> QMatrix {
    let mut f = QMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        f.set(i, n + i, q(-1));
        f.set(n + i, i, q(1));
    }
    f
}

fn pullback(m: &QMatrix, form: &QMatrix) -> QMatrix {
    &(&m.transpose() * form) * m
}

fn criterion_5_poisson() -> String {
    let mut chains = 0;
    for l in [0u32, 1, 2, 3, 4, 5, 6, 8] {
        for rows in [2i64, 3, 4, 6] {
            let m = LatticeSpacetime::slab(l, 0, rows).unwrap();
            for m0sq in masses() {
                let mut sigma_form: Option<QMatrix> = None;
                for t in m.cauchy_rows() {
                    let chain = iso_chain(&m, &CauchyRow::new(m.clone(), t).unwrap(), &m0sq).unwrap();
                    assert!(chain.g.is_isomorphism() && chain.res.is_isomorphism());
                    assert_eq!(chain.observables.dim(), 2 * period(l) as usize, "dim L(M), L={l}");
                    assert_eq!(chain.data.form(), &expected_data_form(period(l) as usize));
                    let obs = chain.observables.space().form();
                    let sol = chain.solutions.space().form();
                    assert_eq!(&pullback(chain.g.matrix(), sol), obs);
                    assert_eq!(&pullback(chain.res.matrix(), chain.data.form()), sol);
                    let pulled = pullback(chain.composite().matrix(), chain.data.form());
                    assert_eq!(sigma_form.get_or_insert_with(|| pulled.clone()), &pulled, "row {t}");
                    chains += 1;
                }
            }
        }
    }
    format!("{chains} (slab, row, mass) chains form-preserving and row-independent")
}

fn disjoint_by_cones(d1: &LatticeSpacetime, d2: &LatticeSpacetime, l: u32) -> bool {
    let s1: &SiteSet = d1.sites();
    let s2: &SiteSet = d2.sites();
    s1.iter().all(|a| s2.iter().all(|b| !in_future_cone(*a, *b, l) && !in_future_cone(*b, *a, l)))
}

fn criterion_6_aqft() -> String {
    let c = config(8, 12, qf(1, 4), 6);
    let a = KgAqft::new(c.l, c.m0sq().clone());
    let pairs = diamond_pairs(c.l, c.t_max, 40).unwrap();
    assert!(pairs.len() >= 20, "only {} diamond pairs", pairs.len());
    for (f1, f2) in &pairs {
        assert!(disjoint_by_cones(f1.source(), f2.source(), c.l));
        let (m1, m2) = (a.observables_map(f1).unwrap(), a.observables_map(f2).unwrap());
        let cross = &(&m1.matrix().transpose() * m1.tgt().form()) * m2.matrix();
        assert_eq!(cross, QMatrix::zeros(m1.matrix().cols(), m2.matrix().cols()));
    }
    assert_report(&check_einstein_causality(&a, &pairs).unwrap());

    let cauchy = random_cauchy_morphisms(&c, 30).unwrap();
    for f in &cauchy {
        let m = a.morphism(f).unwrap();
        let back = m.inverse().unwrap();
        assert!(m.map().matrix().rows() == m.map().matrix().cols());
        assert!((m.map().matrix() * back.map().matrix()).is_identity());
    }
    let slice = check_time_slice(&a, &cauchy).unwrap();
    assert_report(&slice);
    assert_report(&check_aqft_axioms(&a, &c, 12).unwrap());
    format!("{} causally disjoint diamond pairs commute; {} Cauchy morphisms invertible", pairs.len(), slice.len())
}

/// `ζ_o = CCR(res_Σ ∘ G_M)` built from the isomorphism chain.
fn zeta(a: &KgAqft, f: &KgFft, o: &aqft_fft::lbord::BordObject) -> CcrMorphism {
    let m = o.spacetime();
    let chain = iso_chain(&m, &o.cauchy_row(), a.m0sq()).unwrap();
    CcrMorphism::between(chain.composite(), &a.algebra(&m).unwrap(), &f.algebra(o).unwrap()).unwrap()
}

/// A product of three random two-term linear elements plus a scalar.
fn cubic(rng: &mut ChaCha8Rng, alg: &aqft_fft::ccr::CcrAlgebra) -> CcrElement {
    let mut x = alg.unit();
    for _ in 0..3 {
        let mut v = vec![Q::zero(); alg.dim()];
        for _ in 0..2 {
            v[rng.gen_range(0..alg.dim())] = q(rng.gen_range(1..=3));
        }
        x = x.multiply(&alg.linear(&v).unwrap()).unwrap();
    }
    x.add(&alg.scalar(cq(q(1), q(-1)))).unwrap()
}

/// Naturality of `ζ` on cubic elements, with `ζ` built from the isomorphism chain.
fn cubic_naturality(c: &CompareConfig, count: usize, seed: u64) -> usize {
    let a = KgAqft::new(c.l, c.m0sq().clone());
    let fkg = KgFft::new(c.l, c.m0sq().clone());
    let fa = fft_from_aqft(&a).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bordisms = random_bordisms(c, count);
    for b in &bordisms {
        let (z0, z1) = (zeta(&a, &fkg, &b.src()), zeta(&a, &fkg, &b.tgt()));
        let x = cubic(&mut rng, z0.src());
        assert_eq!(x.degree(), 3);
        let lhs = z1.apply(&fa.morphism(b).unwrap().apply(&x).unwrap()).unwrap();
        let rhs = fkg.morphism(b).unwrap().apply(&z0.apply(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "bordism {b}");
    }
    bordisms.len()
}

fn criterion_7_scalar_comparison() -> String {
    let mut classes = Vec::new();
    let mut cubics = 0;
    for (c, seed) in [(config(12, 16, Q::zero(), 7), 70), (config(6, 10, qf(1, 4), 17), 71)] {
        let report = check_scalar_comparison(&c, 100, 20).unwrap();
        assert_report(&report);
        let coverage = report.of("comparison-coverage").next().unwrap();
        assert!(coverage.lhs.as_u64().unwrap() >= 100);
        assert!(count(&report, "scalar-comparison") >= 100);
        assert!(count(&report, "scalar-comparison-elements") >= 20);
        classes.push(format!("{} classes at {}", coverage.lhs, c.key()));
        cubics += cubic_naturality(&c, 10, seed);
    }
    format!("{}; 20 random degree-3 elements each; {cubics} cubic products", classes.join(", "))
}

fn criterion_8_reconstruction() -> String {
    let c = config(6, 10, qf(1, 4), 8);
    assert_report(&check_reconstruction(&c, 12).unwrap());
    let a = KgAqft::new(c.l, c.m0sq().clone());
    let rec = reconstruct_aqft(fft_from_aqft(&a).unwrap()).unwrap();
    let cauchy = random_cauchy_morphisms(&c, 12).unwrap();
    for g in &cauchy {
        assert_eq!(rec.algebra(g.source()).unwrap(), a.algebra(g.source()).unwrap());
        assert_eq!(rec.morphism(g).unwrap().map().matrix(), a.morphism(g).unwrap().map().matrix(), "{g}");
    }
    for m0sq in masses() {
        assert_report(&check_one_dimensional_roundtrip(&m0sq, 6).unwrap());
    }
    format!("reconstruction equals A_KG on {} Cauchy morphisms; one-point roundtrip for 3 masses", cauchy.len())
}

fn criterion_9_non_fullness() -> String {
    let c = config(6, 10, Q::zero(), 9);
    let report = check_non_fullness(&c, 8).unwrap();
    assert_report(&report);
    assert!(count(&report, "twist-differs-off-cauchy") > 0);
    assert!(count(&report, "twist-same-fft") > 0);

    let a = KgAqft::new(c.l, Q::zero());
    let twisted = SignTwisted::new(&a);
    let slab = LatticeSpacetime::slab(c.l, 0, 4).unwrap();
    let diamond = LatticeSpacetime::diamond(c.l, Site::new(0, 0), 2).unwrap();
    let f = LocMorphism::inclusion(&diamond, &slab).unwrap();
    assert!(twisted.is_twisted(&f).unwrap());
    assert_ne!(twisted.morphism(&f).unwrap().map().matrix(), a.morphism(&f).unwrap().map().matrix());
    let (fa, ft) = (fft_from_aqft(&a).unwrap(), fft_from_aqft(&twisted).unwrap());
    for b in random_bordisms(&c, 10) {
        assert_eq!(fa.morphism(&b).unwrap().map().matrix(), ft.morphism(&b).unwrap().map().matrix());
    }
    assert_report(&check_time_translation_witness(&c, 6).unwrap());
    "sign twist differs on a diamond inclusion, same FFT image; time translation has no AQFT preimage".into()
}

struct Outcome {
    number: usize,
    title: &'static str,
    budget: Duration,
    elapsed: Duration,
    result: Result<String, String>,
}

fn run(number: usize, title: &'static str, budget_secs: u64, f: fn() -> String) -> Outcome {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).map_err(|e| {
        e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()
    });
    Outcome { number, title, budget: Duration::from_secs(budget_secs), elapsed: start.elapsed(), result }
}

#[test]
fn acceptance_criteria() {
    let outcomes = [
        run(1, "pseudo-category laws", 30, criterion_1_coherence),
        run(2, "truncation / inclusion adjunction", 30, criterion_2_adjunction),
        run(3, "companions and weak inverses", 10, criterion_3_companions),
        run(4, "Green operator axioms", 60, criterion_4_green),
        run(5, "Poisson isomorphism chain", 30, criterion_5_poisson),
        run(6, "AQFT causality and time-slice", 60, criterion_6_aqft),
        run(7, "scalar comparison naturality", 120, criterion_7_scalar_comparison),
        run(8, "reconstruction roundtrip", 60, criterion_8_reconstruction),
        run(9, "non-fullness witness", 10, criterion_9_non_fullness),
    ];
    for o in &outcomes {
        let status = if o.result.is_ok() { "PASS" } else { "FAIL" };
        let detail = match &o.result {
            Ok(d) | Err(d) => d,
        };
        let over = if o.elapsed > o.budget { " (over expected runtime)" } else { "" };
        println!(
            "criterion {}: {status} {} [{:.1}s / {}s{over}]: {detail}",
            o.number,
            o.title,
            o.elapsed.as_secs_f64(),
            o.budget.as_secs()
        );
    }
    let failed: Vec<usize> = outcomes.iter().filter(|o| o.result.is_err()).map(|o| o.number).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
