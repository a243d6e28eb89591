//! The verification suites behind the command-line driver, each producing a
//! [`Report`] of exact comparisons.

use serde_json::{json, Value};

use crate::compare::{
    check_aqft_axioms, check_class_independence, check_faithfulness_probe, check_fft_functoriality, check_non_fullness,
    check_one_dimensional_roundtrip, check_reconstruction, check_scalar_comparison, check_time_translation_witness,
    fft_from_aqft, CheckRecord, CompareConfig, CompareError, KgAqft, KgFft, Report,
};
use crate::kleingordon::{apply_p, causal_propagator, green_advanced, green_retarded, iso_chain, Field};
use crate::lattice::{causal_future, causal_past, CauchyRow, LatticeSpacetime, SiteSet};
use crate::lbord::{
    canonical_globular, class_key, companion, export_instance, hcompose, truncate, weak_inverse, Bordism, InstanceConfig,
    LBordInstance, TwoCell, Germ,
};
use crate::pseudocat::{
    check_adjunction, check_coherence, companion_identities_hold, count_pseudofunctors_into_iota, find_companion,
    generators, iota, tau, LawReport,
};

/// Largest circumference used for the exported bordism instance; exhaustive
/// interchange checking grows roughly with the cube of the cell count.
pub const MAX_INSTANCE_L: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Coherence,
    Adjunction,
    Bordism,
    Kg,
    Compare,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Coherence, Suite::Adjunction, Suite::Bordism, Suite::Kg, Suite::Compare];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Coherence => "coherence",
            Suite::Adjunction => "adjunction",
            Suite::Bordism => "bordism",
            Suite::Kg => "kg",
            Suite::Compare => "compare",
        }
    }
}

/// Sample counts for the randomized comparison checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub samples: usize,
    pub element_probes: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Self { samples: 8, element_probes: 4 }
    }
}

pub fn run(suite: Suite, config: &CompareConfig, sampling: Sampling) -> Result<Report, CompareError> {
    config.validate()?;
    let report = match suite {
        Suite::Coherence => coherence(config)?,
        Suite::Adjunction => adjunction(config)?,
        Suite::Bordism => bordism(config)?,
        Suite::Kg => kg(config)?,
        Suite::Compare => compare(config, sampling)?,
    };
    Ok(report.normalized())
}

/// The bounded exported instances: one spatial point, and the cylinder of
/// circumference `min(L, MAX_INSTANCE_L)` when `L > 0`.
pub fn instances(config: &CompareConfig) -> Result<Vec<(String, LBordInstance)>, CompareError> {
    let mut out = vec![("lbord L=0".to_string(), export_instance(&InstanceConfig::one_dimensional())?)];
    if config.l > 0 {
        let l = config.l.min(MAX_INSTANCE_L);
        out.push((format!("lbord L={l}"), export_instance(&InstanceConfig::two_dimensional(l))?));
    }
    Ok(out)
}

fn push_laws(report: &mut Report, prefix: &str, key: &str, laws: &LawReport, construction: &str) {
    for e in &laws.entries {
        let witness = e.witness.as_ref().map_or(Value::Null, |w| json!(w));
        report.push(CheckRecord::new(
            &format!("{prefix}-{}", e.law),
            key,
            e.witness.is_none(),
            witness,
            Value::Null,
            construction,
        ));
    }
}

fn coherence(config: &CompareConfig) -> Result<Report, CompareError> {
    let mut report = Report::new();
    for (name, c) in generators::suite(3) {
        push_laws(&mut report, "coherence", &format!("iota({name})"), &check_coherence(&iota(&c).pseudo), "iota");
    }
    for (name, inst) in instances(config)? {
        push_laws(&mut report, "coherence", &name, &check_coherence(&inst.pseudo), "lattice bordisms");
    }
    Ok(report)
}

fn adjunction(config: &CompareConfig) -> Result<Report, CompareError> {
    let mut report = Report::new();
    for (name, c) in generators::suite(4) {
        let (pass, lhs) = match tau(&iota(&c).pseudo) {
            Ok(t) => (t.category.same_tables(&c), json!(t.category.n_morphisms())),
            Err(e) => (false, json!(e.to_string())),
        };
        report.push(CheckRecord::new("tau-iota-identity", &name, pass, lhs, json!(c.n_morphisms()), "tau after iota"));
    }
    for (name, c) in generators::suite(3) {
        push_laws(&mut report, "adjunction", &format!("iota({name})"), &check_adjunction(&c, &iota(&c).pseudo), "tau -| iota");
    }
    let d = generators::cyclic_with_collapsing_arrow(3);
    for (name, inst) in instances(config)? {
        push_laws(&mut report, "adjunction", &name, &check_adjunction(&d, &inst.pseudo), "tau -| iota");
        let count = count_pseudofunctors_into_iota(&inst.pseudo, &d).map_err(|e| CompareError::Config(e.to_string()));
        let functors = tau(&inst.pseudo)
            .map(|t| crate::pseudocat::enumerate_functors(&t.category, &d).len())
            .map_err(|e| CompareError::Config(e.to_string()));
        let (lhs, rhs) = (count?, functors?);
        report.push(CheckRecord::new("adjunction-hom-count", &name, lhs == rhs, json!(lhs), json!(rhs), "tau -| iota"));
    }
    Ok(report)
}

fn bordism(config: &CompareConfig) -> Result<Report, CompareError> {
    let mut report = Report::new();
    for (name, inst) in instances(config)? {
        for (gi, g) in inst.germs.iter().enumerate() {
            let key = format!("{name} germ {g}");
            let table = find_companion(&inst.pseudo, gi);
            let found = table.as_ref().is_ok_and(|c| companion_identities_hold(&inst.pseudo, c));
            report.push(CheckRecord::new("companion-exists", &key, found, json!(found), json!(true), "companion"));
            report.extend(companion_records(g, &key));
        }
        let t = truncate(&inst);
        let keys: std::collections::BTreeSet<_> = inst.bordisms.iter().map(class_key).collect();
        report.push(CheckRecord::new(
            "truncation-classes",
            &name,
            t.category.n_morphisms() == keys.len(),
            json!(t.category.n_morphisms()),
            json!(keys.len()),
            "homotopy category",
        ));
        let mut assoc = true;
        for b0 in &inst.bordisms {
            for b1 in inst.bordisms.iter().filter(|b| b.src() == b0.tgt()) {
                for b2 in inst.bordisms.iter().filter(|b| b.src() == b1.tgt()) {
                    let left = hcompose(&hcompose(b2, b1)?, b0)?;
                    let right = hcompose(b2, &hcompose(b1, b0)?)?;
                    assoc &= canonical_globular(&left, &right).is_ok();
                }
            }
        }
        report.push(CheckRecord::new("associator-globular", &name, assoc, json!(assoc), json!(true), "pushout composition"));
    }
    Ok(report)
}

fn companion_records(g: &Germ, key: &str) -> Report {
    let mut report = Report::new();
    let c = companion(g);
    let boundaries = (c.up.cell_source(), c.up.cell_target(), c.down.cell_source(), c.down.cell_target())
        == (*g, Germ::identity(g.tgt()), Germ::identity(g.src()), *g);
    report.push(CheckRecord::new("companion-boundaries", key, boundaries, json!(boundaries), json!(true), "companion"));
    let vertical = c.up.vcompose(&c.down).ok();
    let unit = TwoCell::unit(g);
    report.push(CheckRecord::new(
        "companion-vertical-identity",
        key,
        vertical.as_ref() == Some(&unit),
        json!(vertical.map(|v| v.to_string())),
        json!(unit.to_string()),
        "companion",
    ));
    let inv = weak_inverse(g);
    for (check, composite, unit) in [
        ("weak-inverse-left", hcompose(&inv, &c.horizontal), Bordism::unit(g.src())),
        ("weak-inverse-right", hcompose(&c.horizontal, &inv), Bordism::unit(g.tgt())),
    ] {
        let pass = composite.as_ref().is_ok_and(|b| class_key(b) == class_key(&unit) && canonical_globular(b, &unit).is_ok());
        let lhs = composite.map_or_else(|e| json!(e.to_string()), |b| json!(b.to_string()));
        report.push(CheckRecord::new(check, key, pass, lhs, json!(unit.to_string()), "companion weak inverse"));
    }
    report
}

fn kg(config: &CompareConfig) -> Result<Report, CompareError> {
    let mut report = Report::new();
    let (l, m0sq) = (config.l, config.m0sq());
    let m = LatticeSpacetime::slab(l, 0, config.t_max)?;
    let key = format!("{} slab [0,{}]", config.key(), config.t_max);
    let interior = m.stencil_interior();
    let (mut inverse, mut supports, mut antisym) = (true, true, true);
    let mut props = Vec::new();
    for p in &interior {
        let d = Field::delta(&m, *p)?;
        let (plus, minus) = (green_retarded(&m, &d, m0sq)?, green_advanced(&m, &d, m0sq)?);
        let target = d.restrict(&interior);
        inverse &= apply_p(&m, &plus, m0sq) == target && apply_p(&m, &minus, m0sq) == target;
        let cone: SiteSet = [*p].into_iter().collect();
        supports &= plus.support().is_subset(&causal_future(&m, &cone)?)
            && minus.support().is_subset(&causal_past(&m, &cone)?);
        props.push((d, causal_propagator(&m, &Field::delta(&m, *p)?, m0sq)?));
    }
    for (i, (a, ga)) in props.iter().enumerate().step_by(7) {
        for (b, gb) in props.iter().skip(i).step_by(5) {
            antisym &= a.pairing(gb) == -b.pairing(ga);
        }
    }
    // G±(P ψ) = ψ for ψ supported two steps inside the boundary.
    let mut left_inverse = true;
    for p in interior.iter().filter(|p| crate::lattice::stencil(**p, l).iter().all(|s| interior.contains(s))) {
        let psi = Field::delta(&m, *p)?;
        let p_psi = apply_p(&m, &psi, m0sq);
        left_inverse &= green_retarded(&m, &p_psi, m0sq)? == psi && green_advanced(&m, &p_psi, m0sq)? == psi;
    }
    for (check, pass) in [
        ("green-right-inverse", inverse),
        ("green-left-inverse", left_inverse),
        ("green-support", supports),
        ("propagator-antisymmetric", antisym),
    ] {
        report.push(CheckRecord::new(check, &key, pass, json!(pass), json!(true), "Green operators"));
    }

    let rows = config.t_max.min(6);
    let small = LatticeSpacetime::slab(l, 0, rows)?;
    let small_key = format!("{} slab [0,{rows}]", config.key());
    let mut form = None;
    for t in small.cauchy_rows() {
        let chain = iso_chain(&small, &CauchyRow::new(small.clone(), t)?, m0sq)?;
        let iso = chain.g.is_isomorphism() && chain.res.is_isomorphism();
        let zeta = chain.composite();
        let pulled = &(&zeta.matrix().transpose() * chain.data.form()) * zeta.matrix();
        let preserved = &pulled == chain.observables.space().form();
        let row_key = format!("{small_key} row {t}");
        report.push(CheckRecord::new("poisson-isomorphisms", &row_key, iso, json!(iso), json!(true), "Poisson chain"));
        report.push(CheckRecord::new("poisson-form-preserved", &row_key, preserved, json!(preserved), json!(true), "Poisson chain"));
        let dim = chain.observables.dim();
        let expected = 2 * small.period() as usize;
        report.push(CheckRecord::new("observables-dimension", &row_key, dim == expected, json!(dim), json!(expected), "Poisson chain"));
        let same = form.get_or_insert_with(|| pulled.clone()) == &pulled;
        report.push(CheckRecord::new("form-row-independent", &row_key, same, json!(same), json!(true), "Poisson chain"));
    }
    Ok(report)
}

fn compare(config: &CompareConfig, sampling: Sampling) -> Result<Report, CompareError> {
    let Sampling { samples, element_probes } = sampling;
    let mut report = Report::new();
    if config.l == 0 {
        report.extend(check_one_dimensional_roundtrip(config.m0sq(), config.t_max)?);
        return Ok(report);
    }
    let a = KgAqft::new(config.l, config.m0sq().clone());
    let fkg = KgFft::new(config.l, config.m0sq().clone());
    let fa = fft_from_aqft(&a)?;
    report.extend(check_aqft_axioms(&a, config, samples)?);
    report.extend(check_fft_functoriality(&fkg, config, samples)?);
    report.extend(relabel(check_fft_functoriality(&fa, config, samples)?, "F_A"));
    report.extend(check_class_independence(&fkg, config, samples)?);
    report.extend(check_scalar_comparison(config, samples, element_probes)?);
    report.extend(check_reconstruction(config, samples)?);
    report.extend(check_one_dimensional_roundtrip(config.m0sq(), config.t_max.min(6))?);
    report.extend(check_non_fullness(config, samples)?);
    report.extend(check_time_translation_witness(config, samples)?);
    report.extend(check_faithfulness_probe(config, samples)?);
    Ok(report)
}

fn relabel(report: Report, prefix: &str) -> Report {
    let mut out = Report::new();
    for r in report.records() {
        let mut r = r.clone();
        r.instance_key = format!("{prefix} {}", r.instance_key);
        out.push(r);
    }
    out
}
