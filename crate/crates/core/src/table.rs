//! Finite magmas given by operation tables, and the axiom checks for
//! f-shelves, f-racks, f-quandles and f-crossed sets.
//!
//! Elements are `0..n`. `table[x][y]` is `x * y`, the left operand indexes
//! the row. The structure map `f` is never stored: it is the diagonal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An `n x n` operation table with entries in `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FTable {
    order: usize,
    cells: Vec<usize>,
}

impl FTable {
    /// Builds a table from rows of 0-based entries.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        let mut cells = Vec::with_capacity(order * order);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != order {
                return Err(Error::RaggedRow { row, len: r.len(), order });
            }
            for (col, value) in r.into_iter().enumerate() {
                if value >= order {
                    return Err(Error::EntryOutOfRange { row, col, value, order });
                }
                cells.push(value);
            }
        }
        Ok(FTable { order, cells })
    }

    /// Builds a table from rows written with elements `1..=n`.
    pub fn from_one_based(rows: Vec<Vec<usize>>) -> Result<Self> {
        let mut shifted = Vec::with_capacity(rows.len());
        for (row, r) in rows.into_iter().enumerate() {
            let mut out = Vec::with_capacity(r.len());
            for (col, v) in r.into_iter().enumerate() {
                if v == 0 {
                    return Err(Error::ZeroInOneBased { row, col });
                }
                out.push(v - 1);
            }
            shifted.push(out);
        }
        FTable::new(shifted)
    }

    /// Builds a table of the given order from a cell function.
    pub fn from_fn(order: usize, mut op: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let rows = (0..order)
            .map(|x| (0..order).map(|y| op(x, y)).collect())
            .collect();
        FTable::new(rows)
    }

    pub(crate) fn from_cells_unchecked(order: usize, cells: Vec<usize>) -> Self {
        debug_assert_eq!(cells.len(), order * order);
        debug_assert!(cells.iter().all(|&c| c < order));
        FTable { order, cells }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// `x * y`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.order + y]
    }

    /// Row-major flattened entries.
    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// The structure map, read off the diagonal.
    pub fn derived_f(&self) -> Vec<usize> {
        (0..self.order).map(|x| self.op(x, x)).collect()
    }

    /// `f(x*y) = f(x)*f(y)` for every pair.
    pub fn is_f_endomorphism(&self) -> bool {
        let f = self.derived_f();
        let n = self.order;
        (0..n).all(|x| (0..n).all(|y| f[self.op(x, y)] == self.op(f[x], f[y])))
    }

    /// Every row and every column is a permutation of `0..n`.
    pub fn is_latin(&self) -> bool {
        let n = self.order;
        let mut seen = vec![false; n];
        for x in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for y in 0..n {
                let v = self.op(x, y);
                if seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        (0..n).all(|y| self.right_translation_is_bijective(y))
    }

    /// The right translation `R_y: z -> z*y` as a map.
    pub fn right_translation(&self, y: usize) -> Vec<usize> {
        (0..self.order).map(|z| self.op(z, y)).collect()
    }

    pub fn right_translation_is_bijective(&self, y: usize) -> bool {
        is_permutation(&self.right_translation(y))
    }

    /// Applies `sigma` as a relabelling: entry `(i, j)` of the result is
    /// `sigma(t[sigma^-1(i)][sigma^-1(j)])`. `sigma` must be a permutation.
    pub fn relabel(&self, sigma: &[usize]) -> FTable {
        let n = self.order;
        let mut cells = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                cells[sigma[x] * n + sigma[y]] = sigma[self.op(x, y)];
            }
        }
        FTable::from_cells_unchecked(n, cells)
    }

    /// Replaces every entry `e` by `phi(e)`.
    pub(crate) fn map_entries(&self, phi: &[usize]) -> FTable {
        let cells = self.cells.iter().map(|&c| phi[c]).collect();
        FTable::from_cells_unchecked(self.order, cells)
    }

    /// Validates `map` as a self-map of `0..n`.
    pub fn check_map(&self, map: &[usize]) -> Result<()> {
        check_map(map, self.order, self.order)
    }
}

pub(crate) fn check_map(map: &[usize], len: usize, target: usize) -> Result<()> {
    if map.len() != len {
        return Err(Error::MapLength { len: map.len(), expected: len });
    }
    if let Some((index, &value)) = map.iter().enumerate().find(|(_, &v)| v >= target) {
        return Err(Error::MapOutOfRange { index, value, order: target });
    }
    Ok(())
}

pub(crate) fn is_permutation(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    for &v in map {
        if v >= map.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

impl fmt::Debug for FTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FTable{:?}", self.rows())
    }
}

impl fmt::Display for FTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = (self.order.saturating_sub(1)).to_string().len();
        for row in self.cells.chunks(self.order) {
            let line: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default)]
    one_based: bool,
}

impl Serialize for FTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableJson { order: self.order, table: self.rows(), one_based: false }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = TableJson::deserialize(d)?;
        if raw.order != raw.table.len() {
            return Err(D::Error::custom(format!(
                "order {} does not match {} rows",
                raw.order,
                raw.table.len()
            )));
        }
        let built = if raw.one_based {
            FTable::from_one_based(raw.table)
        } else {
            FTable::new(raw.table)
        };
        built.map_err(D::Error::custom)
    }
}

/// Axiom levels, cumulative in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Shelf,
    Rack,
    Quandle,
    Crossed,
}

impl std::str::FromStr for Level {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "shelf" => Ok(Level::Shelf),
            "rack" => Ok(Level::Rack),
            "quandle" => Ok(Level::Quandle),
            "crossed" => Ok(Level::Crossed),
            other => Err(format!("unknown level {other:?}")),
        }
    }
}

/// Identifies which condition a witness violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// `(x*y)*f(z) = (x*z)*(y*z)`; witness `(x, y, z)`.
    SelfDistributive,
    /// exactly one `z` with `z*y = f(x)`; witness `(x, y)`.
    UniqueSolution,
    /// `x*x = f(x)`; witness `(x)`.
    Idempotent,
    /// `y*x = f(y)` implies `x*y = f(x)`; witness `(x, y)`.
    Crossed,
    /// `alpha_{x,x}(a,a) = g(a)`; witness `(x, a)`.
    CocycleDiagonal,
    /// `alpha_{x,y}(-,b)` is a bijection; witness `(x, y, b)`.
    CocycleBijective,
    /// twisted cocycle identity; witness `(x, y, z, a, b, c)`.
    CocycleIdentity,
    /// crossed clause of an extension; witness `(x, y, a, b)`.
    CocycleCrossed,
    /// constant cocycle identity; witness `(x, y, z, a)`.
    ConstantIdentity,
    /// `lambda_{x,x} = id`; witness `(x, a)`.
    ConstantDiagonal,
    /// crossed clause for constant cocycles; witness `(x, y, b)`.
    ConstantCrossed,
    /// `eta eta` identity; witness `(x, y, z)`.
    ModuleEta,
    /// `eta tau` identity; witness `(x, y, z)`.
    ModuleMixed,
    /// `tau g` identity; witness `(x, y, z)`.
    ModuleTau,
    /// extra quandle-module identity; witness `(x)`.
    QuandleModule,
    /// generalized 2-cocycle identity; witness `(x, y, z)`.
    TwoCocycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    pub witness: Vec<usize>,
}

/// Outcome of a validation run. `passed` holds iff `violations` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub level_requested: Level,
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub(crate) fn new(level: Level) -> Self {
        AxiomReport { level_requested: level, passed: true, violations: Vec::new() }
    }

    pub(crate) fn push(&mut self, condition: Condition, witness: Vec<usize>) {
        self.passed = false;
        self.violations.push(Violation { condition, witness });
    }

    pub fn has(&self, condition: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }

    /// Witnesses for one condition.
    pub fn witnesses(&self, condition: Condition) -> impl Iterator<Item = &[usize]> {
        self.violations
            .iter()
            .filter(move |v| v.condition == condition)
            .map(|v| v.witness.as_slice())
    }
}

/// Checks `t` at `level` with `f` taken from the diagonal, reporting the
/// first witness per condition.
pub fn validate(t: &FTable, level: Level) -> AxiomReport {
    validate_with_map(t, &t.derived_f(), level, false)
}

/// As [`validate`] but collects every witness.
pub fn validate_exhaustive(t: &FTable, level: Level) -> AxiomReport {
    validate_with_map(t, &t.derived_f(), level, true)
}

/// Checks `t` at `level` against an explicit structure map `f`. With
/// `f = diagonal` the idempotency check is vacuous; with any other map it
/// is a real condition at quandle level and above.
///
/// Panics if `f` is not a self-map of `0..n`.
pub fn validate_with_map(t: &FTable, f: &[usize], level: Level, exhaustive: bool) -> AxiomReport {
    t.check_map(f).expect("structure map must be a self-map of the carrier");
    let n = t.order();
    let mut report = AxiomReport::new(level);

    'shelf: for x in 0..n {
        for y in 0..n {
            let xy = t.op(x, y);
            for z in 0..n {
                if t.op(xy, f[z]) != t.op(t.op(x, z), t.op(y, z)) {
                    report.push(Condition::SelfDistributive, vec![x, y, z]);
                    if !exhaustive {
                        break 'shelf;
                    }
                }
            }
        }
    }
    if level >= Level::Rack {
        'rack: for x in 0..n {
            for y in 0..n {
                let hits = (0..n).filter(|&z| t.op(z, y) == f[x]).count();
                if hits != 1 {
                    report.push(Condition::UniqueSolution, vec![x, y]);
                    if !exhaustive {
                        break 'rack;
                    }
                }
            }
        }
    }
    if level >= Level::Quandle {
        for x in 0..n {
            if t.op(x, x) != f[x] {
                report.push(Condition::Idempotent, vec![x]);
                if !exhaustive {
                    break;
                }
            }
        }
    }
    if level >= Level::Crossed {
        'crossed: for x in 0..n {
            for y in 0..n {
                if t.op(y, x) == f[y] && t.op(x, y) != f[x] {
                    report.push(Condition::Crossed, vec![x, y]);
                    if !exhaustive {
                        break 'crossed;
                    }
                }
            }
        }
    }
    report
}

impl Violation {
    /// Re-evaluates the witness against `t` and structure map `f`; true iff
    /// the violation is real.
    pub fn reproduces(&self, t: &FTable, f: &[usize]) -> bool {
        let w = &self.witness;
        let n = t.order();
        match self.condition {
            Condition::SelfDistributive => {
                let (x, y, z) = (w[0], w[1], w[2]);
                t.op(t.op(x, y), f[z]) != t.op(t.op(x, z), t.op(y, z))
            }
            Condition::UniqueSolution => {
                let (x, y) = (w[0], w[1]);
                (0..n).filter(|&z| t.op(z, y) == f[x]).count() != 1
            }
            Condition::Idempotent => t.op(w[0], w[0]) != f[w[0]],
            Condition::Crossed => {
                let (x, y) = (w[0], w[1]);
                t.op(y, x) == f[y] && t.op(x, y) != f[x]
            }
            _ => false,
        }
    }
}
