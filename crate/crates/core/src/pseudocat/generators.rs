//! Small finite categories used as test instances.

use std::collections::BTreeMap;

use super::FiniteCategory;

/// Preorder on `0..n` from a reflexive, transitive relation `le[a][b]`.
pub fn preorder(le: &[Vec<bool>]) -> FiniteCategory {
    let n = le.len();
    let mut pairs = Vec::new();
    let mut index = BTreeMap::new();
    for (a, row) in le.iter().enumerate() {
        for (b, &related) in row.iter().enumerate() {
            if related {
                index.insert((a, b), pairs.len());
                pairs.push((a, b));
            }
        }
    }
    let src = pairs.iter().map(|p| p.0).collect();
    let tgt = pairs.iter().map(|p| p.1).collect();
    let identity = (0..n).map(|a| index[&(a, a)]).collect();
    let labels = pairs.iter().map(|(a, b)| format!("{a}<={b}")).collect();
    FiniteCategory::from_fn(n, src, tgt, identity, |g, f| index[&(pairs[f].0, pairs[g].1)])
        .expect("reflexive transitive relation")
        .with_labels((0..n).map(|a| a.to_string()).collect(), labels)
}

/// All preorders on `n` labeled objects.
pub fn all_preorders(n: usize) -> Vec<FiniteCategory> {
    let off: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << off.len()) {
        let mut le = vec![vec![false; n]; n];
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
        }
        for (i, &(a, b)) in off.iter().enumerate() {
            if mask & (1 << i) != 0 {
                le[a][b] = true;
            }
        }
        let transitive = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| !(le[a][b] && le[b][c]) || le[a][c]))
        });
        if transitive {
            out.push(preorder(&le));
        }
    }
    out
}

/// One-object category from a monoid table on `0..order` with unit `0`.
pub fn monoid(order: usize, mul: impl Fn(usize, usize) -> usize) -> FiniteCategory {
    FiniteCategory::from_fn(1, vec![0; order], vec![0; order], vec![0], mul).expect("monoid table")
}

pub fn cyclic_group(n: usize) -> FiniteCategory {
    monoid(n, |g, f| (g + f) % n)
}

pub fn klein_four() -> FiniteCategory {
    monoid(4, |g, f| g ^ f)
}

/// `S3` as permutations of `{0,1,2}` in lexicographic order; `g∘f` is composition.
pub fn symmetric_group_3() -> FiniteCategory {
    let perms = permutations3();
    let index: BTreeMap<[usize; 3], usize> = perms.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    monoid(6, |g, f| {
        let (pg, pf) = (perms[g], perms[f]);
        index[&[pg[pf[0]], pg[pf[1]], pg[pf[2]]]]
    })
}

fn permutations3() -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                if a != b && b != c && a != c {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// `{1, e}` with `e∘e = e`.
pub fn idempotent_monoid() -> FiniteCategory {
    monoid(2, |g, f| g | f)
}

/// Free category on a DAG: morphisms are paths, identities are empty paths.
pub fn free_on_dag(n: usize, edges: &[(usize, usize)]) -> FiniteCategory {
    let mut paths: Vec<(usize, Vec<usize>)> = (0..n).map(|a| (a, Vec::new())).collect();
    let mut frontier: Vec<usize> = (0..n).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for i in frontier {
            let (start, ref p) = paths[i];
            let end = p.last().map_or(start, |&e| edges[e].1);
            let p = p.clone();
            for (e, &(a, _)) in edges.iter().enumerate() {
                if a == end {
                    let mut q = p.clone();
                    q.push(e);
                    next.push(paths.len());
                    paths.push((start, q));
                }
            }
        }
        frontier = next;
    }
    let end_of = |(s, p): &(usize, Vec<usize>)| p.last().map_or(*s, |&e| edges[e].1);
    let index: BTreeMap<(usize, Vec<usize>), usize> =
        paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let src = paths.iter().map(|p| p.0).collect();
    let tgt = paths.iter().map(end_of).collect();
    let labels = paths
        .iter()
        .map(|(s, p)| if p.is_empty() { format!("id{s}") } else { format!("{p:?}") })
        .collect();
    FiniteCategory::from_fn(n, src, tgt, (0..n).collect(), |g, f| {
        let mut p = paths[f].1.clone();
        p.extend(&paths[g].1);
        index[&(paths[f].0, p)]
    })
    .expect("paths in a DAG")
    .with_labels((0..n).map(|a| a.to_string()).collect(), labels)
}

/// Two isomorphic objects with automorphism group `Z/n`: morphisms `(i, j, k)`.
pub fn two_object_groupoid(n: usize) -> FiniteCategory {
    let mors: Vec<(usize, usize, usize)> =
        (0..2).flat_map(|i| (0..2).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect();
    let index: BTreeMap<(usize, usize, usize), usize> =
        mors.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let src = mors.iter().map(|m| m.0).collect();
    let tgt = mors.iter().map(|m| m.1).collect();
    let identity = (0..2).map(|i| index[&(i, i, 0)]).collect();
    FiniteCategory::from_fn(2, src, tgt, identity, |g, f| {
        let (a, _, k0) = mors[f];
        let (_, c, k1) = mors[g];
        index[&(a, c, (k0 + k1) % n)]
    })
    .expect("groupoid table")
}

/// Objects `{0, 1}`, `Z/n` at `0` generated by `r`, one arrow `a : 0 → 1`
/// with `a∘r = a`. Morphisms: `r^0..r^{n-1}`, `id1`, `a`.
pub fn cyclic_with_collapsing_arrow(n: usize) -> FiniteCategory {
    let a = n + 1;
    let mut src = vec![0; n];
    let mut tgt = vec![0; n];
    src.extend([1, 0]);
    tgt.extend([1, 1]);
    FiniteCategory::from_fn(2, src, tgt, vec![0, n], |g, f| match (g, f) {
        (g, f) if g < n && f < n => (g + f) % n,
        (g, f) if g == n => f,
        (g, f) if f < n && g == a => a,
        (g, _) => g,
    })
    .expect("collapsing arrow table")
}

/// The generator suite: every preorder on up to `max_preorder` objects plus
/// groups, monoids, free categories and small groupoids, with names.
pub fn suite(max_preorder: usize) -> Vec<(String, FiniteCategory)> {
    let mut out = Vec::new();
    for n in 1..=max_preorder {
        for (i, c) in all_preorders(n).into_iter().enumerate() {
            out.push((format!("preorder{n}_{i}"), c));
        }
    }
    for n in 1..=4 {
        out.push((format!("Z{n}"), cyclic_group(n)));
    }
    out.push(("S3".into(), symmetric_group_3()));
    out.push(("V4".into(), klein_four()));
    out.push(("idempotent".into(), idempotent_monoid()));
    out.push(("free_chain3".into(), free_on_dag(3, &[(0, 1), (1, 2)])));
    out.push(("free_parallel".into(), free_on_dag(2, &[(0, 1), (0, 1)])));
    out.push(("free_square".into(), free_on_dag(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])));
    out.push(("groupoid2_Z2".into(), two_object_groupoid(2)));
    out.push(("groupoid2_Z3".into(), two_object_groupoid(3)));
    out.push(("collapsing_Z3".into(), cyclic_with_collapsing_arrow(3)));
    out
}
