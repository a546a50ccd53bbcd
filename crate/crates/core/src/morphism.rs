//! Homomorphisms between tables, automorphism groups, twisting and
//! canonical forms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{check_map, is_permutation, FTable};

/// A map between carriers, `map[x]` being the image of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    pub source_order: usize,
    pub target_order: usize,
    pub map: Vec<usize>,
    is_automorphism: bool,
}

impl Morphism {
    /// Wraps `map` after checking that it is a homomorphism `src -> dst`.
    pub fn homomorphism(src: &FTable, dst: &FTable, map: Vec<usize>) -> Result<Self> {
        if !is_homomorphism(src, dst, &map)? {
            return Err(Error::Precondition { what: "map is not a homomorphism".into(), witness: map });
        }
        let is_automorphism = src == dst && is_permutation(&map);
        Ok(Morphism { source_order: src.order(), target_order: dst.order(), map, is_automorphism })
    }

    pub fn identity(n: usize) -> Self {
        Morphism { source_order: n, target_order: n, map: (0..n).collect(), is_automorphism: true }
    }

    pub fn is_automorphism(&self) -> bool {
        self.is_automorphism
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        assert_eq!(other.target_order, self.source_order);
        Morphism {
            source_order: other.source_order,
            target_order: self.target_order,
            map: other.map.iter().map(|&x| self.map[x]).collect(),
            is_automorphism: self.is_automorphism && other.is_automorphism,
        }
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Morphism {
        assert!(is_permutation(&self.map), "only bijections invert");
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Morphism {
            source_order: self.target_order,
            target_order: self.source_order,
            map: inv,
            is_automorphism: self.is_automorphism,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MorphismJson {
    map: Vec<usize>,
    is_automorphism: bool,
}

impl Serialize for Morphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MorphismJson { map: self.map.clone(), is_automorphism: self.is_automorphism }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Morphism {
    /// Reads a self-map; the automorphism flag is taken as given and should
    /// be rechecked against a table with [`Morphism::homomorphism`].
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MorphismJson::deserialize(d)?;
        let n = raw.map.len();
        Ok(Morphism { source_order: n, target_order: n, map: raw.map, is_automorphism: raw.is_automorphism })
    }
}

/// `phi(x*y) = phi(x)*phi(y)` and `phi(f(x)) = f(phi(x))` for all `x, y`.
pub fn is_homomorphism(src: &FTable, dst: &FTable, map: &[usize]) -> Result<bool> {
    if map.len() != src.order() {
        return Err(Error::SizeMismatch(map.len(), src.order()));
    }
    check_map(map, src.order(), dst.order())?;
    Ok(first_hom_failure(src, dst, map).is_none())
}

fn first_hom_failure(src: &FTable, dst: &FTable, map: &[usize]) -> Option<Vec<usize>> {
    let n = src.order();
    let (fs, fd) = (src.derived_f(), dst.derived_f());
    for x in 0..n {
        if map[fs[x]] != fd[map[x]] {
            return Some(vec![x]);
        }
        for y in 0..n {
            if map[src.op(x, y)] != dst.op(map[x], map[y]) {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

/// Per-element data preserved by every isomorphism.
fn element_signatures(t: &FTable) -> Vec<Vec<usize>> {
    let n = t.order();
    let f = t.derived_f();
    let mut preimages = vec![0usize; n];
    for &y in &f {
        preimages[y] += 1;
    }
    (0..n)
        .map(|x| {
            // tail length and cycle length of x under f
            let mut seen = vec![usize::MAX; n];
            let (mut cur, mut step) = (x, 0);
            while seen[cur] == usize::MAX {
                seen[cur] = step;
                cur = f[cur];
                step += 1;
            }
            let tail = seen[cur];
            let cycle = step - seen[cur];
            let mut row: Vec<usize> = (0..n).map(|y| t.op(x, y)).collect();
            let mut col: Vec<usize> = (0..n).map(|y| t.op(y, x)).collect();
            let fixes = row.iter().enumerate().filter(|&(y, &v)| v == y).count();
            let left_fixed = col.iter().filter(|&&v| v == x).count();
            let row_hits = row.iter().filter(|&&v| v == x).count();
            row.sort_unstable();
            col.sort_unstable();
            let row_shape = multiplicities(&row);
            let col_shape = multiplicities(&col);
            let mut sig = vec![preimages[x], tail, cycle, fixes, left_fixed, row_hits];
            sig.extend(row_shape);
            sig.push(usize::MAX);
            sig.extend(col_shape);
            sig
        })
        .collect()
}

fn multiplicities(sorted: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&v| v == sorted[i]).count();
        out.push(j);
        i += j;
    }
    out.sort_unstable();
    out
}

/// Depth-first search over bijections `a -> b` that are homomorphisms,
/// assigning `0, 1, ...` in order and trying images in increasing order,
/// so maps are visited lexicographically. `visit` returns false to stop.
fn search_isomorphisms(a: &FTable, b: &FTable, mut visit: impl FnMut(&[usize]) -> bool) {
    let n = a.order();
    if n != b.order() {
        return;
    }
    let (sa, sb) = (element_signatures(a), element_signatures(b));
    let candidates: Vec<Vec<usize>> =
        (0..n).map(|x| (0..n).filter(|&y| sa[x] == sb[y]).collect()).collect();
    if candidates.iter().any(Vec::is_empty) {
        return;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search_step(a, b, &candidates, 0, &mut map, &mut used, &mut visit);
}

fn search_step(
    a: &FTable,
    b: &FTable,
    candidates: &[Vec<usize>],
    x: usize,
    map: &mut [usize],
    used: &mut [bool],
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    let n = a.order();
    if x == n {
        return visit(map);
    }
    for &y in &candidates[x] {
        if used[y] {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if consistent(a, b, map, x) && !search_step(a, b, candidates, x + 1, map, used, visit) {
            map[x] = usize::MAX;
            used[y] = false;
            return false;
        }
        map[x] = usize::MAX;
        used[y] = false;
    }
    true
}

/// Checks every product among `0..=last` whose result is also assigned.
fn consistent(a: &FTable, b: &FTable, map: &[usize], last: usize) -> bool {
    for u in 0..=last {
        for v in 0..=last {
            if u != last && v != last {
                // pairs not involving `last` were checked earlier, unless
                // their product is `last`
                if a.op(u, v) != last {
                    continue;
                }
            }
            let p = a.op(u, v);
            if p <= last && map[p] != b.op(map[u], map[v]) {
                return false;
            }
        }
    }
    true
}

/// All automorphisms, sorted lexicographically by map.
pub fn automorphism_group(t: &FTable) -> Vec<Morphism> {
    let mut out = Vec::new();
    search_isomorphisms(t, t, |m| {
        out.push(Morphism {
            source_order: t.order(),
            target_order: t.order(),
            map: m.to_vec(),
            is_automorphism: true,
        });
        true
    });
    out
}

/// Lexicographically first isomorphism `a -> b`, if any.
pub fn find_isomorphism(a: &FTable, b: &FTable) -> Option<Morphism> {
    let mut found = None;
    search_isomorphisms(a, b, |m| {
        found = Some(m.to_vec());
        false
    });
    found.map(|map| Morphism {
        source_order: a.order(),
        target_order: b.order(),
        map,
        is_automorphism: a == b,
    })
}

/// `a *_phi b = phi(a*b)`; requires `phi` to be an automorphism of `t`.
pub fn twist(t: &FTable, phi: &[usize]) -> Result<FTable> {
    t.check_map(phi)?;
    if let Some(witness) = first_hom_failure(t, t, phi) {
        return Err(Error::NotTableAutomorphism { witness });
    }
    if !is_permutation(phi) {
        let n = t.order();
        let witness = (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .find(|&(x, y)| phi[x] == phi[y])
            .map(|(x, y)| vec![x, y])
            .unwrap_or_default();
        return Err(Error::NotTableAutomorphism { witness });
    }
    Ok(t.map_entries(phi))
}

/// Searches `phi` in `Aut(a)` and an isomorphism `psi: twist(a, phi) -> b`.
pub fn twisted_isomorphic(a: &FTable, b: &FTable) -> Option<(Morphism, Morphism)> {
    if a.order() != b.order() {
        return None;
    }
    automorphism_group(a).into_iter().find_map(|phi| {
        let twisted = a.map_entries(&phi.map);
        find_isomorphism(&twisted, b).map(|psi| (phi, psi))
    })
}

/// Largest order accepted by [`canonical_form`].
pub const CANONICAL_ORDER_CAP: usize = 8;

/// The lexicographically smallest flattened table over all relabellings.
pub fn canonical_form(t: &FTable) -> Result<FTable> {
    Ok(canonical_form_with_labelling(t)?.0)
}

/// Canonical form together with a relabelling `sigma` producing it.
pub fn canonical_form_with_labelling(t: &FTable) -> Result<(FTable, Vec<usize>)> {
    let n = t.order();
    if n > CANONICAL_ORDER_CAP {
        return Err(Error::OrderTooLarge { order: n, cap: CANONICAL_ORDER_CAP });
    }
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut best = t.clone();
    let mut best_sigma = sigma.clone();
    let mut inv = vec![0; n];
    while next_permutation(&mut sigma) {
        for (x, &s) in sigma.iter().enumerate() {
            inv[s] = x;
        }
        // compare cell by cell, bailing out at the first difference
        let mut ordering = std::cmp::Ordering::Equal;
        'cells: for i in 0..n {
            for j in 0..n {
                let v = sigma[t.op(inv[i], inv[j])];
                ordering = v.cmp(&best.op(i, j));
                if ordering != std::cmp::Ordering::Equal {
                    break 'cells;
                }
            }
        }
        if ordering == std::cmp::Ordering::Less {
            best = t.relabel(&sigma);
            best_sigma.clone_from(&sigma);
        }
    }
    Ok((best, best_sigma))
}

/// Rearranges into the next permutation in lexicographic order; false when
/// `p` was the last one.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
