//! Verification suites over randomly generated bounded instances.

use std::collections::{BTreeMap, BTreeSet};

use num::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::ccr::{CcrAlgebra, CcrElement, CcrMorphism, Word};
use crate::kleingordon::{evolve_data, res_map, solutions_space, PoissonMap};
use crate::lattice::{is_cauchy_morphism, period, LatticeSpacetime, LocMorphism, Shift, Site};
use crate::lbord::{canonical_globular, class_key, hcompose, resize_collars};
use crate::lbord::{BordObject, Bordism, Rows};
use crate::numeric::{cq, q, QMatrix, Q};

use super::aqft::{check_einstein_causality, check_time_slice, diamond_pairs, KgAqft, SignTwisted};
use super::fft::{fft_from_aqft, KgFft};
use super::reconstruct::reconstruct_aqft;
use super::report::{bordism_key, morphism_key, object_key, region_key, CheckRecord, Report};
use super::{invert, then, Aqft, CompareConfig, CompareError, Fft};

fn matrix_value(m: &QMatrix) -> Value {
    serde_json::to_value(m).expect("matrices serialize")
}

fn same_map(lhs: &CcrMorphism, rhs: &CcrMorphism) -> bool {
    lhs.src() == rhs.src() && lhs.tgt() == rhs.tgt() && lhs.map().matrix() == rhs.map().matrix()
}

fn map_record(check: &str, key: String, lhs: &CcrMorphism, rhs: &CcrMorphism, construction: &str) -> CheckRecord {
    CheckRecord::new(
        check,
        key,
        same_map(lhs, rhs),
        matrix_value(lhs.map().matrix()),
        matrix_value(rhs.map().matrix()),
        construction,
    )
}

fn element_record(check: &str, key: String, lhs: &CcrElement, rhs: &CcrElement, construction: &str) -> CheckRecord {
    CheckRecord::new(check, key, lhs == rhs, json!(lhs), json!(rhs), construction)
}

fn identity(alg: &CcrAlgebra) -> CcrMorphism {
    CcrMorphism::between(PoissonMap::identity(alg.space()), alg, alg).expect("same algebra")
}

/// `CCR(−1)`, the automorphism negating every generator.
fn negation(alg: &CcrAlgebra) -> Result<CcrMorphism, CompareError> {
    let n = alg.dim();
    let map = PoissonMap::new(alg.space().clone(), alg.space().clone(), -&QMatrix::identity(n))?;
    Ok(CcrMorphism::between(map, alg, alg)?)
}

// Random generation.

fn rng(config: &CompareConfig, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(config.seed);
    r.set_stream(stream);
    r
}

/// Objects and collars have at least three rows, so that `A_KG` is defined on them.
fn random_object(rng: &mut ChaCha8Rng, l: u32, t_max: i64) -> BordObject {
    let lo = rng.gen_range(0..t_max - 1);
    let hi = rng.gen_range(lo + 2..=t_max.min(lo + 6));
    let sigma = rng.gen_range(lo..hi);
    BordObject::slab(l, lo, hi, sigma).expect("marked row below the top row")
}

fn thick_collars(o: &BordObject) -> Vec<Rows> {
    o.collars().into_iter().filter(|v| v.len() >= 3).collect()
}

/// The three-row collar around `{σ, σ+1}` inside `v`, preferring the row above.
fn three_row_collar(v: Rows, sigma: i64) -> Rows {
    if v.contains(sigma + 2) {
        Rows::new(sigma, sigma + 2)
    } else {
        Rows::new(sigma - 1, sigma + 1)
    }
}

/// A bordism whose regions all lie in rows `[0, t_max]`.
fn random_bordism(rng: &mut ChaCha8Rng, l: u32, t_max: i64, src: Option<BordObject>) -> Bordism {
    let p = period(l);
    loop {
        let src = src.unwrap_or_else(|| random_object(rng, l, t_max));
        let tgt = random_object(rng, l, t_max);
        let v0 = *thick_collars(&src).choose(rng).expect("objects have thick collars");
        let v1 = *thick_collars(&tgt).choose(rng).expect("objects have thick collars");
        let dt0 = rng.gen_range(-v0.lo..=t_max - v0.hi);
        let row0 = src.sigma() + dt0;
        let (lo1, hi1) = ((-v1.lo).max(row0 - tgt.sigma()), t_max - v1.hi);
        if lo1 > hi1 {
            continue;
        }
        let dt1 = rng.gen_range(lo1..=hi1);
        let bottom = (v0.lo + dt0).min(v1.lo + dt1);
        let top = (v0.hi + dt0).max(v1.hi + dt1);
        let n = Rows::new(rng.gen_range(0..=bottom), rng.gen_range(top..=t_max));
        let i0 = Shift::new(dt0, rng.gen_range(0..p));
        let i1 = Shift::new(dt1, rng.gen_range(0..p));
        if let Ok(b) = Bordism::new(src, tgt, n, v0, v1, i0, i1) {
            return b;
        }
    }
}

/// `count` bordisms in pairwise distinct classes, deterministic in the seed.
pub fn random_bordisms(config: &CompareConfig, count: usize) -> Vec<Bordism> {
    let mut rng = rng(config, 1);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for _ in 0..50 * count.max(1) {
        if out.len() == count {
            break;
        }
        let b = random_bordism(&mut rng, config.l, config.t_max, None);
        if seen.insert(class_key(&b)) {
            out.push(b);
        }
    }
    out
}

/// Composable pairs `(b1, b0)` whose composite keeps collars of at least
/// three rows; gluing can shrink the outer collars to `{Σ, Σ+1}`.
fn random_stacked_pairs(config: &CompareConfig, count: usize) -> Vec<(Bordism, Bordism)> {
    let mut rng = rng(config, 2);
    let mut out = Vec::new();
    while out.len() < count {
        let b0 = random_bordism(&mut rng, config.l, config.t_max, None);
        let b1 = random_bordism(&mut rng, config.l, config.t_max, Some(b0.tgt()));
        if hcompose(&b1, &b0).is_ok_and(|b| b.v0().len() >= 3 && b.v1().len() >= 3) {
            out.push((b1, b0));
        }
    }
    out
}

/// Translations of slabs of at least three rows in `[0, t_max]` into such
/// slabs; all are Cauchy.
pub fn random_cauchy_morphisms(config: &CompareConfig, count: usize) -> Result<Vec<LocMorphism>, CompareError> {
    let mut rng = rng(config, 3);
    let (l, t_max) = (config.l, config.t_max);
    let mut out = Vec::new();
    while out.len() < count {
        let c = rng.gen_range(0..t_max - 1);
        let d = rng.gen_range(c + 2..=t_max);
        let a = rng.gen_range(0..t_max - 1);
        let b = rng.gen_range(a + 2..=t_max);
        if b - a > d - c {
            continue;
        }
        let dt = rng.gen_range(c - a..=d - b);
        let shift = Shift::new(dt, rng.gen_range(0..period(l)));
        let f = LocMorphism::new(LatticeSpacetime::slab(l, a, b)?, LatticeSpacetime::slab(l, c, d)?, shift)?;
        out.push(f);
    }
    Ok(out)
}

/// A sum of up to three words of length at most `max_degree`; the first has
/// exactly that length.
fn random_element(rng: &mut ChaCha8Rng, alg: &CcrAlgebra, max_degree: usize) -> Result<CcrElement, CompareError> {
    let terms = rng.gen_range(1..=3);
    let raw: Vec<(Word, _)> = (0..terms)
        .map(|k| {
            let len = if k == 0 { max_degree } else { rng.gen_range(0..=max_degree) };
            let word: Word = (0..len).map(|_| rng.gen_range(0..alg.dim())).collect();
            (word, cq(q(rng.gen_range(-3..=3)), q(rng.gen_range(-3..=3))))
        })
        .collect();
    Ok(alg.normal_form(raw.iter().map(|(w, c)| (w.as_slice(), c.clone())))?)
}

// Suites.

/// Functoriality on composable pairs, Einstein causality on diamond pairs and
/// time-slice on Cauchy morphisms.
pub fn check_aqft_axioms(a: &dyn Aqft, config: &CompareConfig, samples: usize) -> Result<Report, CompareError> {
    let mut report = Report::new();
    let cauchy = random_cauchy_morphisms(config, samples)?;
    report.extend(check_time_slice(a, &cauchy)?);
    if config.l >= 3 {
        report.extend(check_einstein_causality(a, &diamond_pairs(config.l, config.t_max, samples)?)?);
    }
    // Composable pairs: a diamond or slab into the source of a Cauchy morphism, then that morphism.
    for g in &cauchy {
        let m = g.source();
        let first = if config.l >= 3 && m.t_max() - m.t_min() >= 2 {
            let d = LatticeSpacetime::diamond(config.l, Site::new(m.t_min(), 0), 1)?;
            LocMorphism::inclusion(&d, m)?
        } else {
            LocMorphism::identity(m)
        };
        let lhs = a.morphism(&g.after(&first)?)?;
        let rhs = then(&a.morphism(&first)?, &a.morphism(g)?)?;
        report.push(map_record(
            "aqft-functoriality",
            format!("{} then {}", morphism_key(&first), morphism_key(g)),
            &lhs,
            &rhs,
            "AQFT functor",
        ));
    }
    let m = LatticeSpacetime::slab(config.l, 0, 2)?;
    report.push(map_record(
        "aqft-identity",
        region_key(&m),
        &a.morphism(&LocMorphism::identity(&m))?,
        &identity(&a.algebra(&m)?),
        "AQFT functor",
    ));
    Ok(report)
}

/// Units go to identities, stacked bordisms to composites, and every
/// bordism to an isomorphism.
pub fn check_fft_functoriality(f: &dyn Fft, config: &CompareConfig, samples: usize) -> Result<Report, CompareError> {
    let mut report = Report::new();
    for (b1, b0) in random_stacked_pairs(config, samples) {
        let glued = hcompose(&b1, &b0)?;
        let (f0, f1) = (f.morphism(&b0)?, f.morphism(&b1)?);
        report.push(map_record(
            "fft-composition",
            format!("{} then {}", bordism_key(&b0), bordism_key(&b1)),
            &f.morphism(&glued)?,
            &then(&f0, &f1)?,
            "FFT functor on stacked bordisms",
        ));
        for (b, fb) in [(b0, &f0), (b1, &f1)] {
            report.push(CheckRecord::new(
                "fft-invertible",
                bordism_key(&b),
                fb.map().is_isomorphism(),
                json!({ "rank": fb.map().matrix().rank() }),
                json!({ "rank": fb.map().matrix().rows() }),
                "time-slice condition for FFTs",
            ));
        }
        let o = b0.src();
        report.push(map_record(
            "fft-identity",
            object_key(&o),
            &f.morphism(&Bordism::unit(o))?,
            &identity(&f.algebra(&o)?),
            "FFT functor on units",
        ));
    }
    Ok(report.normalized())
}

/// Representatives related by a globular 2-cell (translating the whole
/// bordism, or shrinking its collars) are sent to the same map.
pub fn check_class_independence(f: &dyn Fft, config: &CompareConfig, samples: usize) -> Result<Report, CompareError> {
    let mut report = Report::new();
    let p = period(config.l);
    for (k, b) in random_bordisms(config, samples).into_iter().enumerate() {
        let v0 = three_row_collar(b.v0(), b.src().sigma());
        let v1 = three_row_collar(b.v1(), b.tgt().sigma());
        let (shrunk, _) = resize_collars(&b, v0, v1, b.n())?;
        let moved = b.translated(Shift::new(k as i64 % 3 - 1, k as i64 % p));
        let fb = f.morphism(&b)?;
        for (name, other) in [("shrunk-collars", shrunk), ("translated", moved)] {
            canonical_globular(&b, &other)?;
            report.push(map_record(
                "fft-class-independence",
                format!("{} [{name}]", bordism_key(&b)),
                &fb,
                &f.morphism(&other)?,
                "FFT on the homotopy category",
            ));
        }
    }
    Ok(report.normalized())
}

/// `CCR(res_{(M,Σ)} ∘ G_M) : F_{A_KG}(M, Σ) → F_KG(M, Σ)`.
fn comparison_component(a: &KgAqft, fkg: &KgFft, o: &BordObject) -> Result<CcrMorphism, CompareError> {
    let m = o.spacetime();
    let obs = a.observables(&m)?;
    let sol = solutions_space(&m, a.m0sq())?;
    let zeta = res_map(&sol, &o.cauchy_row())?.after(&sol.propagator_map(&obs)?)?;
    Ok(CcrMorphism::between(zeta, &a.algebra(&m)?, &fkg.algebra(o)?)?)
}

/// Naturality of `ζ : F_{A_KG} ⇒ F_KG` on `samples` bordism classes plus
/// stacked composites, exactly on generators and on random elements of
/// degree at most `max_degree` for the first `element_probes` bordisms.
pub fn check_scalar_comparison(
    config: &CompareConfig,
    samples: usize,
    element_probes: usize,
) -> Result<Report, CompareError> {
    let a = KgAqft::new(config.l, config.m0sq().clone());
    let fa = fft_from_aqft(&a)?;
    let fkg = KgFft::new(config.l, config.m0sq().clone());
    let mut bordisms = random_bordisms(config, samples);
    for (b1, b0) in random_stacked_pairs(config, samples / 10 + 1) {
        bordisms.push(hcompose(&b1, &b0)?);
    }
    bordisms.push(Bordism::unit(bordisms[0].src()));

    let mut report = Report::new();
    let mut components = BTreeMap::new();
    for b in &bordisms {
        for o in [b.src(), b.tgt()] {
            if components.contains_key(&o) {
                continue;
            }
            let zeta = comparison_component(&a, &fkg, &o)?;
            report.push(CheckRecord::new(
                "comparison-component",
                object_key(&o),
                zeta.map().is_isomorphism(),
                json!({ "rank": zeta.map().matrix().rank() }),
                json!({ "rank": zeta.map().matrix().rows() }),
                "CCR(res ∘ G) is an algebra isomorphism",
            ));
            components.insert(o, zeta);
        }
    }
    let classes: BTreeSet<_> = bordisms.iter().map(class_key).collect();
    report.push(CheckRecord::new(
        "comparison-coverage",
        config.key(),
        classes.len() >= samples,
        json!(classes.len()),
        json!(samples),
        "bordism classes checked",
    ));

    let mut rng = rng(config, 4);
    for (k, b) in bordisms.iter().enumerate() {
        let (z0, z1) = (&components[&b.src()], &components[&b.tgt()]);
        let (fab, fkb) = (fa.morphism(b)?, fkg.morphism(b)?);
        let lhs = then(&fab, z1)?;
        let rhs = then(z0, &fkb)?;
        report.push(map_record("scalar-comparison", bordism_key(b), &lhs, &rhs, "naturality of ζ"));
        if k < element_probes {
            let x = random_element(&mut rng, z0.src(), config.max_degree)?;
            report.push(element_record(
                "scalar-comparison-elements",
                format!("{} x={x}", bordism_key(b)),
                &z1.apply(&fab.apply(&x)?)?,
                &fkb.apply(&z0.apply(&x)?)?,
                "naturality of ζ on algebra elements",
            ));
        }
    }
    Ok(report.normalized())
}

/// Reconstruction from `F_{A_KG}` and from `F_KG`: the recovered AQFT agrees
/// with (or is naturally isomorphic to) `A_KG` on Cauchy morphisms, does not
/// depend on the row used, and `F_{A}` of it is isomorphic to the input.
pub fn check_reconstruction(config: &CompareConfig, samples: usize) -> Result<Report, CompareError> {
    let a = KgAqft::new(config.l, config.m0sq().clone());
    let fkg = KgFft::new(config.l, config.m0sq().clone());
    let from_a = reconstruct_aqft(fft_from_aqft(&a)?)?;
    let from_kg = reconstruct_aqft(&fkg)?;
    let mut report = Report::new();

    for g in random_cauchy_morphisms(config, samples)? {
        let key = morphism_key(&g);
        let direct = a.morphism(&g)?;
        report.push(map_record("reconstruct-agrees", key.clone(), &from_a.morphism(&g)?, &direct, "reconstructed AQFT"));
        let (m, m2) = (g.source(), g.target());
        let rec = from_kg.morphism(&g)?;
        for sigma in m.t_min() + 1..m.t_max() {
            report.push(map_record(
                "reconstruct-row-independence",
                format!("{key} Σ={sigma}"),
                &from_kg.morphism_via(&g, sigma)?,
                &rec,
                "reconstructed AQFT on morphisms",
            ));
        }
        // ζ_M : A_KG(M) → A(M) at the earliest rows.
        let z = comparison_component(&a, &fkg, &from_kg.earliest(m)?)?;
        let z2 = comparison_component(&a, &fkg, &from_kg.earliest(m2)?)?;
        report.push(map_record(
            "reconstruct-natural-iso",
            key,
            &then(&direct, &z2)?,
            &then(&z, &rec)?,
            "natural isomorphism to the reconstructed AQFT",
        ));
    }

    let roundtrip = fft_from_aqft(&from_kg)?;
    for b in random_bordisms(config, samples) {
        let iota0 = from_kg.cocone(&b.src())?;
        let iota1 = from_kg.cocone(&b.tgt())?;
        report.push(CheckRecord::new(
            "reconstruct-cocone-iso",
            object_key(&b.tgt()),
            iota1.map().is_isomorphism(),
            json!({ "rank": iota1.map().matrix().rank() }),
            json!({ "rank": iota1.map().matrix().rows() }),
            "cocone maps",
        ));
        report.push(map_record(
            "reconstruct-roundtrip",
            bordism_key(&b),
            &then(&iota0, &roundtrip.morphism(&b)?)?,
            &then(&fkg.morphism(&b)?, &iota1)?,
            "F is isomorphic to F of its reconstruction",
        ));
    }
    Ok(report.normalized())
}

/// On one spatial point every embedding of slabs is Cauchy, so the
/// reconstruction of `F_{A_KG}` recovers `A_KG` on all morphisms between
/// slabs of at least three rows in `[0, t]`.
pub fn check_one_dimensional_roundtrip(m0sq: &Q, t: i64) -> Result<Report, CompareError> {
    let a = KgAqft::new(0, m0sq.clone());
    let rec = reconstruct_aqft(fft_from_aqft(&a)?)?;
    let fkg = KgFft::new(0, m0sq.clone());
    let rec_kg = reconstruct_aqft(&fkg)?;
    let roundtrip = fft_from_aqft(&rec_kg)?;
    let mut report = Report::new();
    let slabs: Vec<_> =
        (0..t).flat_map(|lo| (lo + 2..=t).map(move |hi| (lo, hi))).collect();
    for &(a0, b0) in &slabs {
        for &(c0, d0) in &slabs {
            for dt in c0 - a0..=d0 - b0 {
                let g = LocMorphism::new(LatticeSpacetime::slab(0, a0, b0)?, LatticeSpacetime::slab(0, c0, d0)?, Shift::new(dt, 0))?;
                report.push(CheckRecord::new(
                    "one-dimensional-cauchy",
                    morphism_key(&g),
                    is_cauchy_morphism(&g),
                    json!(true),
                    json!(true),
                    "every embedding is Cauchy on one spatial point",
                ));
                report.push(map_record(
                    "one-dimensional-roundtrip",
                    morphism_key(&g),
                    &rec.morphism(&g)?,
                    &a.morphism(&g)?,
                    "reconstructed AQFT on all morphisms",
                ));
            }
        }
    }
    let config = CompareConfig { l: 0, t_max: t, ..CompareConfig::default() };
    for b in random_bordisms(&config, 12) {
        let (iota0, iota1) = (rec_kg.cocone(&b.src())?, rec_kg.cocone(&b.tgt())?);
        report.push(map_record(
            "one-dimensional-fft-roundtrip",
            bordism_key(&b),
            &then(&iota0, &roundtrip.morphism(&b)?)?,
            &then(&fkg.morphism(&b)?, &iota1)?,
            "F is isomorphic to F of its reconstruction",
        ));
    }
    Ok(report.normalized())
}

/// The sign-twisted `A_KG` satisfies the axioms, differs from `A_KG` on a
/// diamond inclusion, agrees on Cauchy morphisms, and has the same FFT.
pub fn check_non_fullness(config: &CompareConfig, samples: usize) -> Result<Report, CompareError> {
    let a = KgAqft::new(config.l, config.m0sq().clone());
    let twisted = SignTwisted::new(&a);
    let mut report = Report::new();

    let slab = LatticeSpacetime::slab(config.l, 0, config.t_max)?;
    let d = LatticeSpacetime::diamond(config.l, Site::new(1, 0), 1)?;
    let j = LocMorphism::inclusion(&d, &slab)?;
    let (plain, signed) = (a.morphism(&j)?, twisted.morphism(&j)?);
    report.push(CheckRecord::new(
        "twist-differs-off-cauchy",
        morphism_key(&j),
        !is_cauchy_morphism(&j) && !same_map(&plain, &signed) && !plain.map().matrix().is_zero(),
        matrix_value(plain.map().matrix()),
        matrix_value(signed.map().matrix()),
        "non-Cauchy morphism where the AQFTs differ",
    ));
    for g in random_cauchy_morphisms(config, samples)? {
        report.push(map_record(
            "twist-agrees-on-cauchy",
            morphism_key(&g),
            &a.morphism(&g)?,
            &twisted.morphism(&g)?,
            "twist is trivial on Cauchy morphisms",
        ));
    }
    let (fa, ft) = (fft_from_aqft(&a)?, fft_from_aqft(&twisted)?);
    for b in random_bordisms(config, samples) {
        let same_objects = fa.algebra(&b.src())? == ft.algebra(&b.src())?;
        let (x, y) = (fa.morphism(&b)?, ft.morphism(&b)?);
        report.push(CheckRecord::new(
            "twist-same-fft",
            bordism_key(&b),
            same_objects && same_map(&x, &y),
            matrix_value(x.map().matrix()),
            matrix_value(y.map().matrix()),
            "equal images under the comparison functor",
        ));
    }
    for mut r in check_aqft_axioms(&twisted, config, samples)?.records().iter().cloned() {
        r.check = format!("twisted-{}", r.check);
        report.push(r);
    }
    Ok(report.normalized())
}

/// One step of time evolution on `Data(Σ)`.
fn one_step(alg: &CcrAlgebra, m0sq: &Q) -> Result<CcrMorphism, CompareError> {
    let n = alg.dim();
    let p = n / 2;
    let columns: Vec<Vec<Q>> = (0..n)
        .map(|j| {
            let e: Vec<Q> = (0..n).map(|i| if i == j { q(1) } else { Q::zero() }).collect();
            let (phi, pi) = evolve_data(&e[..p], &e[p..], 1, m0sq);
            phi.into_iter().chain(pi).collect()
        })
        .collect();
    let map = PoissonMap::new(alg.space().clone(), alg.space().clone(), QMatrix::from_columns(n, &columns))?;
    Ok(CcrMorphism::between(map, alg, alg)?)
}

/// Time translation by one step is a natural automorphism `η` of `F_KG`
/// whose transport to `A_KG` does not preserve the observables of a diamond,
/// so no natural transformation of `A_KG` is sent to it.
pub fn check_time_translation_witness(config: &CompareConfig, samples: usize) -> Result<Report, CompareError> {
    let a = KgAqft::new(config.l, config.m0sq().clone());
    let fkg = KgFft::new(config.l, config.m0sq().clone());
    let mut report = Report::new();
    let eta = |o: &BordObject| one_step(&fkg.algebra(o)?, config.m0sq());
    for b in random_bordisms(config, samples) {
        let fb = fkg.morphism(&b)?;
        report.push(map_record(
            "time-translation-natural",
            bordism_key(&b),
            &then(&fb, &eta(&b.tgt())?)?,
            &then(&eta(&b.src())?, &fb)?,
            "natural automorphism of F_KG",
        ));
    }
    let o = BordObject::slab(config.l, 0, config.t_max, 0)?;
    let m = o.spacetime();
    let zeta = comparison_component(&a, &fkg, &o)?;
    let transported = then(&then(&zeta, &eta(&o)?)?, &invert(&zeta, || "comparison component".into())?)?;
    for x in 0..period(config.l).min(3) {
        let d = LatticeSpacetime::diamond(config.l, Site::new(1, x), 1)?;
        let w = a.observables_map(&LocMorphism::inclusion(&d, &m)?)?;
        let moved = transported.map().matrix() * w.matrix();
        let stacked: Vec<Vec<Q>> = w.matrix().to_rows().into_iter().zip(moved.to_rows()).map(|(mut r, s)| {
            r.extend(s);
            r
        }).collect();
        let (rank_w, rank_both) = (w.matrix().rank(), QMatrix::from_rows(stacked).rank());
        report.push(CheckRecord::new(
            "time-translation-no-preimage",
            region_key(&d),
            rank_both > rank_w,
            json!({ "rank": rank_both }),
            json!({ "rank": rank_w }),
            "η moves diamond observables out of their subalgebra",
        ));
    }
    Ok(report.normalized())
}

/// Distinct natural automorphisms `id` and `CCR(−1)` of `A_KG` give distinct,
/// natural `F_ζ`.
pub fn check_faithfulness_probe(config: &CompareConfig, samples: usize) -> Result<Report, CompareError> {
    let a = KgAqft::new(config.l, config.m0sq().clone());
    let fa = fft_from_aqft(&a)?;
    let mut report = Report::new();
    for g in random_cauchy_morphisms(config, samples)? {
        let ag = a.morphism(&g)?;
        report.push(map_record(
            "negation-natural-aqft",
            morphism_key(&g),
            &then(&negation(ag.src())?, &ag)?,
            &then(&ag, &negation(ag.tgt())?)?,
            "CCR(−1) is a natural automorphism",
        ));
    }
    for b in random_bordisms(config, samples) {
        let fb = fa.morphism(&b)?;
        let (n0, n1) = (negation(&fa.algebra(&b.src())?)?, negation(&fa.algebra(&b.tgt())?)?);
        report.push(map_record(
            "negation-natural-fft",
            bordism_key(&b),
            &then(&n0, &fb)?,
            &then(&fb, &n1)?,
            "F of a natural transformation",
        ));
        let id = identity(n0.src());
        report.push(CheckRecord::new(
            "faithfulness-probe",
            object_key(&b.src()),
            !same_map(&id, &n0),
            matrix_value(id.map().matrix()),
            matrix_value(n0.map().matrix()),
            "distinct transformations have distinct images",
        ));
    }
    Ok(report.normalized())
}
