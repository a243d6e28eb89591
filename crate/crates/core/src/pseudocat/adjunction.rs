//! The adjunction between `tau` and `iota`, checked on finite instances.

use std::collections::HashMap;

use super::category::FiniteCategory;
use super::construct::{find_companion, iota, tau, Iota, Square, Truncation};
use super::functor::{check_pseudofunctor, Functor, PseudoFunctor};
use super::pseudo::{LawReport, PseudoCat};
use super::PseudoCatError;

/// The unit `η_p : p → ιτ(p)` together with `τ(p)` and `ιτ(p)`.
#[derive(Debug, Clone)]
pub struct Unit {
    pub truncation: Truncation,
    pub target: Iota,
    pub eta: PseudoFunctor,
}

/// Builds `η_p`: objects fixed, `g ↦ [ĝ]`, `h ↦ [h]`, cells to the commuting
/// squares `[ĝ1][h] = [h'][ĝ0]`, identity coherence cells.
pub fn unit(p: &PseudoCat) -> Result<Unit, PseudoCatError> {
    let truncation = tau(p)?;
    let tp = &truncation.category;
    let target = iota(tp);
    let q = &target.pseudo;
    let core_index: HashMap<usize, usize> =
        target.core_embedding.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut vertical = Vec::with_capacity(p.c0.n_morphisms());
    for g in 0..p.c0.n_morphisms() {
        let comp = find_companion(p, g)?;
        let class = truncation.class_of[comp.horizontal];
        let v = core_index.get(&class).copied().ok_or_else(|| {
            PseudoCatError::NotWellDefined(format!("companion class of vertical {g} is not invertible"))
        })?;
        vertical.push(v);
    }
    let square_index: HashMap<Square, usize> =
        target.squares.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut cells = Vec::with_capacity(p.c1.n_morphisms());
    for a in 0..p.c1.n_morphisms() {
        let s = Square {
            bottom: truncation.class_of[p.c1.src(a)],
            top: truncation.class_of[p.c1.tgt(a)],
            left: vertical[p.src.mor[a]],
            right: vertical[p.tgt.mor[a]],
        };
        let cell = square_index.get(&s).copied().ok_or_else(|| {
            PseudoCatError::NotWellDefined(format!("square of cell {a} does not commute in tau"))
        })?;
        cells.push(cell);
    }
    let eta = PseudoFunctor {
        f0: super::GroupoidFunctor { obj: (0..p.c0.n_objects()).collect(), mor: vertical },
        f1: super::GroupoidFunctor { obj: truncation.class_of.clone(), mor: cells },
        comp: p
            .composable_horizontals()
            .into_iter()
            .map(|(h1, h0)| {
                let h = p.hcomp(h1, h0).expect("composable");
                ((h1, h0), q.c1.identity(truncation.class_of[h]))
            })
            .collect(),
        unit: (0..p.c0.n_objects())
            .map(|c| q.c1.identity(truncation.class_of[p.hunit.obj[c]]))
            .collect(),
    };
    Ok(Unit { truncation, target, eta })
}

/// Counit, unit, both triangle identities, and the hom-set bijection
/// `|PsFun(p, ι c)| = |Fun(τ p, c)|`.
pub fn check_adjunction(c: &FiniteCategory, p: &PseudoCat) -> LawReport {
    let mut r = LawReport::default();
    let ic = iota(c);
    let counit = match tau(&ic.pseudo) {
        Ok(t) if t.category.same_tables(c) => None,
        Ok(_) => Some("tau(iota(c)) differs from c".to_string()),
        Err(e) => Some(e.to_string()),
    };
    r.push("counit_identity", counit);

    match unit(&ic.pseudo) {
        Ok(u) => {
            let same_shape = u.target.pseudo.c1.same_tables(&ic.pseudo.c1)
                && u.target.pseudo.c0.same_tables(&ic.pseudo.c0);
            let ok = same_shape && u.eta.is_identity(&ic.pseudo);
            r.push("triangle_iota", (!ok).then(|| "unit at iota(c) is not the identity".into()));
        }
        Err(e) => r.push("triangle_iota", Some(e.to_string())),
    }

    match unit(p) {
        Ok(u) => {
            let report = check_pseudofunctor(p, &u.target.pseudo, &u.eta);
            r.push(
                "unit_pseudofunctor",
                report.failures().next().map(|f| format!("{}: {:?}", f.law, f.witness)),
            );
            r.push("triangle_tau", triangle_tau_witness(&u));
        }
        Err(e) => {
            r.push("unit_pseudofunctor", Some(e.to_string()));
            r.push("triangle_tau", Some("unit unavailable".into()));
        }
    }

    let lhs = count_pseudofunctors_into_iota(p, c);
    let rhs = tau(p).map(|t| enumerate_functors(&t.category, c).len());
    let hom = match (lhs, rhs) {
        (Ok(a), Ok(b)) if a == b => None,
        (Ok(a), Ok(b)) => Some(format!("|PsFun(p, iota c)| = {a} but |Fun(tau p, c)| = {b}")),
        (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
    };
    r.push("hom_set_bijection", hom);
    r
}

/// `τ(η_p)` sends every class to itself.
fn triangle_tau_witness(u: &Unit) -> Option<String> {
    let t2 = match tau(&u.target.pseudo) {
        Ok(t) => t,
        Err(e) => return Some(e.to_string()),
    };
    for (k, &h) in u.truncation.representative.iter().enumerate() {
        let image = t2.class_of[u.eta.f1.obj[h]];
        if image != k {
            return Some(format!("class {k} maps to {image}"));
        }
    }
    None
}

/// All functors `a → d`, by backtracking over object maps then morphisms.
pub fn enumerate_functors(a: &FiniteCategory, d: &FiniteCategory) -> Vec<Functor> {
    let mut out = Vec::new();
    let na = a.n_objects();
    let nd = d.n_objects();
    if na > 0 && nd == 0 {
        return out;
    }
    let mut obj = vec![0usize; na];
    loop {
        let mut mor = vec![usize::MAX; a.n_morphisms()];
        for o in 0..na {
            mor[a.identity(o)] = d.identity(obj[o]);
        }
        let free: Vec<usize> = (0..a.n_morphisms()).filter(|&f| !a.is_identity(f)).collect();
        assign_morphisms(a, d, &obj, &free, 0, &mut mor, &mut out);
        // Next object map in lexicographic order.
        let mut i = 0;
        while i < na {
            obj[i] += 1;
            if obj[i] < nd {
                break;
            }
            obj[i] = 0;
            i += 1;
        }
        if i == na {
            break;
        }
    }
    out
}

fn assign_morphisms(
    a: &FiniteCategory,
    d: &FiniteCategory,
    obj: &[usize],
    free: &[usize],
    k: usize,
    mor: &mut Vec<usize>,
    out: &mut Vec<Functor>,
) {
    if k == free.len() {
        out.push(Functor { obj: obj.to_vec(), mor: mor.clone() });
        return;
    }
    let f = free[k];
    for cand in d.hom(obj[a.src(f)], obj[a.tgt(f)]) {
        mor[f] = cand;
        if composition_consistent(a, d, mor) {
            assign_morphisms(a, d, obj, free, k + 1, mor, out);
        }
    }
    mor[f] = usize::MAX;
}

fn composition_consistent(a: &FiniteCategory, d: &FiniteCategory, mor: &[usize]) -> bool {
    for f in 0..a.n_morphisms() {
        if mor[f] == usize::MAX {
            continue;
        }
        for g in a.out_of(a.tgt(f)) {
            let gf = a.comp(g, f);
            if mor[g] != usize::MAX && mor[gf] != usize::MAX && d.compose(mor[g], mor[f]) != Some(mor[gf]) {
                return false;
            }
        }
    }
    true
}

/// Counts pseudo-functors `p → ι(d)`.
///
/// In `ι(d)` a 2-cell is determined by its boundary and globular cells are
/// identities, so a pseudo-functor is exactly a functor `F0` into the core plus
/// an assignment `h ↦ F1 h` that is strictly compatible with `⊙`, units and
/// all cell squares.
pub fn count_pseudofunctors_into_iota(p: &PseudoCat, d: &FiniteCategory) -> Result<usize, PseudoCatError> {
    let (core, embed) = d.core();
    let f0s = enumerate_functors(p.c0.category(), core.category());
    // Cells link horizontals; within a linked component one value determines the rest.
    let n = p.n_horizontal();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in 0..p.c1.n_morphisms() {
        adj[p.c1.src(a)].push(a);
    }
    let mut uf = super::UnionFind::new(n);
    for a in 0..p.c1.n_morphisms() {
        uf.union(p.c1.src(a), p.c1.tgt(a));
    }
    let mut roots: Vec<usize> = (0..n).filter(|&h| uf.find(h) == h).collect();
    roots.sort_unstable();
    let mut count = 0;
    for f0 in &f0s {
        let vert = |g: usize| embed[f0.mor[g]];
        let mut values = vec![usize::MAX; n];
        count += count_components(p, d, &vert, f0, &adj, &roots, 0, &mut values);
    }
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn count_components(
    p: &PseudoCat,
    d: &FiniteCategory,
    vert: &dyn Fn(usize) -> usize,
    f0: &Functor,
    adj: &[Vec<usize>],
    roots: &[usize],
    k: usize,
    values: &mut Vec<usize>,
) -> usize {
    if k == roots.len() {
        return usize::from(strict_constraints_hold(p, d, f0, values));
    }
    let root = roots[k];
    let mut total = 0;
    for cand in d.hom(f0.obj[p.hsrc(root)], f0.obj[p.htgt(root)]) {
        let saved = values.clone();
        if propagate(p, d, vert, adj, root, cand, values) {
            total += count_components(p, d, vert, f0, adj, roots, k + 1, values);
        }
        *values = saved;
    }
    total
}

/// Spreads `values[start] = v` along cells: `F1(h') = F0(tα) F1(h) F0(sα)⁻¹`.
/// Cells are invertible, so following them forwards reaches the whole component.
fn propagate(
    p: &PseudoCat,
    d: &FiniteCategory,
    vert: &dyn Fn(usize) -> usize,
    adj: &[Vec<usize>],
    start: usize,
    v: usize,
    values: &mut [usize],
) -> bool {
    values[start] = v;
    let mut stack = vec![start];
    while let Some(h) = stack.pop() {
        for &a in &adj[h] {
            let hp = p.c1.tgt(a);
            let s_inv = d.inverse_of(vert(p.src.mor[a])).expect("core morphism");
            let forced = d.comp(vert(p.tgt.mor[a]), d.comp(values[h], s_inv));
            if values[hp] == usize::MAX {
                values[hp] = forced;
                stack.push(hp);
            } else if values[hp] != forced {
                return false;
            }
        }
    }
    true
}

fn strict_constraints_hold(p: &PseudoCat, d: &FiniteCategory, f0: &Functor, values: &[usize]) -> bool {
    let units_ok = (0..p.c0.n_objects()).all(|c| values[p.hunit.obj[c]] == d.identity(f0.obj[c]));
    units_ok
        && p.composable_horizontals().into_iter().all(|(h1, h0)| {
            let h = p.hcomp(h1, h0).expect("composable");
            d.compose(values[h1], values[h0]) == Some(values[h])
        })
}
