//! Exhaustive enumeration and classification of small f-quandles.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::is_abelian_group_table;
use crate::morphism::{automorphism_group, canonical_form};
use crate::table::{is_permutation, validate, FTable, Level};

/// Default largest order for enumeration.
pub const DEFAULT_ORDER_CAP: usize = 5;
/// Hard limit, reachable only by raising the cap explicitly.
pub const MAX_ORDER_CAP: usize = 6;

/// All f-quandles of order `n` (labelled, not up to isomorphism), sorted.
pub fn enumerate_all(n: usize) -> Result<Vec<FTable>> {
    enumerate_all_with_cap(n, DEFAULT_ORDER_CAP)
}

pub fn enumerate_all_with_cap(n: usize, cap: usize) -> Result<Vec<FTable>> {
    let cap = cap.min(MAX_ORDER_CAP);
    if n > cap {
        return Err(Error::OrderTooLarge { order: n, cap });
    }
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    let diagonals = n.pow(n as u32);
    let mut out: Vec<FTable> = (0..diagonals)
        .into_par_iter()
        .flat_map_iter(|code| {
            let mut f = vec![0; n];
            let mut c = code;
            for slot in f.iter_mut() {
                *slot = c % n;
                c /= n;
            }
            Search::new(n, f).run()
        })
        .collect();
    out.sort();
    Ok(out)
}

const UNSET: usize = usize::MAX;

/// Fills one table with a fixed diagonal, cell by cell in row-major order.
/// Columns must be permutations (right translations of an f-quandle are
/// bijective), and every self-distributivity instance is checked as soon as
/// all its cells are known.
struct Search {
    n: usize,
    f: Vec<usize>,
    cells: Vec<usize>,
    col_used: Vec<bool>,
    free: Vec<usize>,
    found: Vec<FTable>,
}

impl Search {
    fn new(n: usize, f: Vec<usize>) -> Self {
        let mut cells = vec![UNSET; n * n];
        let mut col_used = vec![false; n * n];
        for x in 0..n {
            cells[x * n + x] = f[x];
            col_used[x * n + f[x]] = true;
        }
        let free = (0..n * n).filter(|&c| c / n != c % n).collect();
        Search { n, f, cells, col_used, free, found: Vec::new() }
    }

    fn run(mut self) -> Vec<FTable> {
        // the diagonal alone can already break a column or an identity
        if (0..self.n).all(|x| self.col_ok_initial(x)) && self.consistent() {
            self.step(0);
        }
        self.found
    }

    fn col_ok_initial(&self, col: usize) -> bool {
        // only one diagonal cell per column, nothing to clash with yet
        self.col_used[col * self.n..(col + 1) * self.n].iter().filter(|&&b| b).count() <= 1
    }

    #[inline]
    fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y]
    }

    fn consistent(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.get(x, y);
                if xy == UNSET {
                    continue;
                }
                for z in 0..n {
                    let left = self.get(xy, self.f[z]);
                    if left == UNSET {
                        continue;
                    }
                    let (xz, yz) = (self.get(x, z), self.get(y, z));
                    if xz == UNSET || yz == UNSET {
                        continue;
                    }
                    let right = self.get(xz, yz);
                    if right != UNSET && left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn step(&mut self, k: usize) {
        let n = self.n;
        if k == self.free.len() {
            let t = FTable::from_cells_unchecked(n, self.cells.clone());
            debug_assert!(validate(&t, Level::Quandle).passed);
            self.found.push(t);
            return;
        }
        let cell = self.free[k];
        let col = cell % n;
        for v in 0..n {
            if self.col_used[col * n + v] {
                continue;
            }
            self.cells[cell] = v;
            self.col_used[col * n + v] = true;
            if self.consistent() {
                self.step(k + 1);
            }
            self.col_used[col * n + v] = false;
            self.cells[cell] = UNSET;
        }
    }
}

/// A twisted-isomorphism class, as indices into [`Catalog::tables`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub members: Vec<usize>,
    /// The structure map is bijective, so the class holds an ordinary
    /// quandle (twist by `f^-1`).
    pub contains_quandle: bool,
    pub is_latin: bool,
    /// Some member is the addition table of an abelian group.
    pub is_group_like: bool,
}

/// Isomorphism and twisted-isomorphism classification of one order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub order: usize,
    /// Canonical forms, one per isomorphism class, sorted.
    pub tables: Vec<FTable>,
    pub iso_class_count: usize,
    pub twisted_class_count: usize,
    pub classes: Vec<ClassInfo>,
    /// Total class counts are computed here and have no external reference.
    pub totals_unverified: bool,
}

impl Catalog {
    pub fn no_quandle_count(&self) -> usize {
        self.classes.iter().filter(|c| !c.contains_quandle).count()
    }

    /// Class index of each table.
    pub fn class_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.tables.len()];
        for (ci, c) in self.classes.iter().enumerate() {
            for &m in &c.members {
                out[m] = ci;
            }
        }
        out
    }
}

pub fn classify(n: usize) -> Result<Catalog> {
    classify_with_cap(n, DEFAULT_ORDER_CAP)
}

pub fn classify_with_cap(n: usize, cap: usize) -> Result<Catalog> {
    let all = enumerate_all_with_cap(n, cap)?;
    let mut tables: Vec<FTable> =
        all.par_iter().map(|t| canonical_form(t)).collect::<Result<Vec<_>>>()?;
    tables.sort();
    tables.dedup();
    Ok(partition(n, tables))
}

/// Groups canonical forms into twisted-isomorphism classes.
fn partition(order: usize, tables: Vec<FTable>) -> Catalog {
    let index: HashMap<&FTable, usize> = tables.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let edges: Vec<(usize, usize)> = tables
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, t)| {
            automorphism_group(t)
                .into_iter()
                .map(|phi| {
                    let twisted = crate::morphism::twist(t, &phi.map).expect("automorphism twists");
                    let canon = canonical_form(&twisted).expect("order within cap");
                    (i, index[&canon])
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut parent: Vec<usize> = (0..tables.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of_root: HashMap<usize, usize> = HashMap::new();
    for i in 0..tables.len() {
        let r = find(&mut parent, i);
        let b = *block_of_root.entry(r).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[b].push(i);
    }
    let classes = blocks
        .into_iter()
        .map(|members| {
            let contains_quandle = is_permutation(&tables[members[0]].derived_f());
            let is_latin = members.iter().any(|&m| tables[m].is_latin());
            let is_group_like = members.iter().any(|&m| is_abelian_group_table(&tables[m]));
            ClassInfo { members, contains_quandle, is_latin, is_group_like }
        })
        .collect::<Vec<_>>();
    Catalog {
        order,
        iso_class_count: tables.len(),
        twisted_class_count: classes.len(),
        tables,
        classes,
        totals_unverified: true,
    }
}

/// Keeps the classes with non-bijective structure maps, reindexed.
pub fn filter_no_quandle(c: &Catalog) -> Catalog {
    let mut tables = Vec::new();
    let mut classes = Vec::new();
    for class in c.classes.iter().filter(|cl| !cl.contains_quandle) {
        let members = class
            .members
            .iter()
            .map(|&m| {
                tables.push(c.tables[m].clone());
                tables.len() - 1
            })
            .collect();
        classes.push(ClassInfo { members, ..class.clone() });
    }
    Catalog {
        order: c.order,
        iso_class_count: tables.len(),
        twisted_class_count: classes.len(),
        tables,
        classes,
        totals_unverified: c.totals_unverified,
    }
}
