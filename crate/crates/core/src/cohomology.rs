//! Cochain complexes of f-quandles with coefficients in `Z_m`.
//!
//! Cochains of degree `n` are functions `X^n -> Z_m`, stored as vectors over
//! the lexicographic tuple basis (first coordinate most significant).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::require_unit;
use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, rank_mod_p, smith_normal_form, Matrix};
use crate::table::FTable;

/// Scalar coefficients: `eta` is multiplication by `T`, `tau` by `S`, and
/// the fiber map is `g = T + S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarModule {
    pub m: u64,
    #[serde(rename = "T")]
    pub t: u64,
    #[serde(rename = "S")]
    pub s: u64,
    pub g: u64,
}

impl ScalarModule {
    pub fn new(m: u64, t: u64, s: u64) -> Result<Self> {
        require_unit(t, m)?;
        Ok(ScalarModule { m, t: t % m, s: s % m, g: (t + s) % m })
    }

    pub fn pairs(&self, order: usize) -> PairCoefficients {
        PairCoefficients {
            m: self.m,
            eta: vec![vec![self.t; order]; order],
            tau: vec![vec![self.s; order]; order],
        }
    }
}

/// Per-pair coefficients `eta_{x,y}`, `tau_{x,y}` acting on `Z_m` by
/// multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCoefficients {
    pub m: u64,
    pub eta: Vec<Vec<u64>>,
    pub tau: Vec<Vec<u64>>,
}

/// Sign of the `tau` term, and how degree 1 is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `+tau` in every degree. Degree 2 then reads
    /// `T psi(x,y) + psi(x*y, fz) = T psi(x,z) + S psi(y,z) + psi(x*z, y*z)`.
    #[default]
    Uniform,
    /// `(-1)^(n+1) tau` in degree `n`.
    Alternating,
    /// Degree 1 is `T phi(x) - S phi(y) + phi(x*y)`; higher degrees as `Uniform`.
    OneCocycleLine,
}

impl std::str::FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "uniform" => Ok(Convention::Uniform),
            "alternating" => Ok(Convention::Alternating),
            "one-cocycle-line" => Ok(Convention::OneCocycleLine),
            other => Err(format!("unknown convention `{other}`")),
        }
    }
}

pub const MAX_DEGREE: usize = 3;

/// `f^k(x)`.
pub fn f_pow(t: &FTable, k: usize, mut x: usize) -> usize {
    for _ in 0..k {
        x = t.op(x, x);
    }
    x
}

/// `((x1 * x2) * f(x3)) * f^2(x4) ...`; a single element is returned as is.
pub fn bracket(t: &FTable, seq: &[usize]) -> usize {
    assert!(!seq.is_empty(), "bracket of an empty sequence");
    seq[1..].iter().enumerate().fold(seq[0], |acc, (k, &x)| t.op(acc, f_pow(t, k, x)))
}

/// Checks `[x1..xn] = [x1..^xi..xn] * f^(i-2)[xi..xn]` for every `2 <= i < n`
/// (1-based `i`). Returns the first failing `i`.
pub fn bracket_deletion_failure(t: &FTable, seq: &[usize]) -> Option<usize> {
    let n = seq.len();
    let full = bracket(t, seq);
    (2..n).find(|&i| {
        let mut rest = seq.to_vec();
        rest.remove(i - 1);
        t.op(bracket(t, &rest), f_pow(t, i - 2, bracket(t, &seq[i - 1..]))) != full
    })
}

fn tuple_of(mut index: usize, order: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % order;
        index /= order;
    }
    out
}

fn index_of(tuple: &[usize], order: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * order + x)
}

/// The matrix of `delta^n : C^n -> C^(n+1)` with entries in `Z_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryMatrix {
    pub degree: usize,
    pub order: usize,
    pub modulus: u64,
    pub rows: usize,
    pub cols: usize,
    /// Row-major; row `r` is the tuple `tuple_of_row(r)`.
    pub entries: Vec<u64>,
}

impl BoundaryMatrix {
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn tuple_of_row(&self, r: usize) -> Vec<usize> {
        tuple_of(r, self.order, self.degree + 1)
    }

    pub fn row_of(&self, tuple: &[usize]) -> usize {
        index_of(tuple, self.order)
    }

    pub fn rows_i64(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|&v| v as i64).collect()).collect()
    }

    pub fn to_bigint(&self) -> Matrix<BigInt> {
        let rows: Vec<Vec<BigInt>> =
            (0..self.rows).map(|r| self.row(r).iter().map(|&v| BigInt::from(v)).collect()).collect();
        Matrix::from_rows(&rows, self.cols)
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let m = self.modulus as u128;
        (0..self.rows)
            .map(|r| (self.row(r).iter().zip(v).map(|(&a, &b)| a as u128 * b as u128).sum::<u128>() % m) as u64)
            .collect()
    }

    /// `self * inner` mod m, i.e. `delta^(n) o delta^(n-1)`.
    pub fn compose(&self, inner: &BoundaryMatrix) -> Vec<u64> {
        assert_eq!(self.cols, inner.rows);
        let m = self.modulus as u128;
        let mut out = vec![0u64; self.rows * inner.cols];
        out.par_chunks_mut(inner.cols).enumerate().for_each(|(r, row)| {
            let mut acc = vec![0u128; inner.cols];
            for (k, &a) in self.row(r).iter().enumerate() {
                if a != 0 {
                    for (j, &b) in inner.row(k).iter().enumerate() {
                        acc[j] += a as u128 * b as u128;
                    }
                }
            }
            for (o, a) in row.iter_mut().zip(acc) {
                *o = (a % m) as u64;
            }
        });
        out
    }
}

fn check_degree(n: usize, lo: usize) -> Result<()> {
    if n < lo || n > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange(n));
    }
    Ok(())
}

fn check_coefficients(t: &FTable, c: &PairCoefficients) -> Result<()> {
    if c.m == 0 {
        return Err(Error::ZeroModulus);
    }
    let n = t.order();
    let ok = |a: &Vec<Vec<u64>>| a.len() == n && a.iter().all(|r| r.len() == n);
    if !ok(&c.eta) || !ok(&c.tau) {
        return Err(Error::Dimension(format!("coefficient tables must be {n}x{n}")));
    }
    Ok(())
}

pub fn boundary_matrix(t: &FTable, module: &ScalarModule, n: usize) -> Result<BoundaryMatrix> {
    boundary_matrix_with(t, &module.pairs(t.order()), n, Convention::Uniform)
}

/// One signed term of `delta^n phi` at a row tuple: `coef * phi(tuple)`.
fn delta_terms(t: &FTable, c: &PairCoefficients, n: usize, conv: Convention, x: &[usize]) -> Vec<(i64, Vec<usize>)> {
    let m = c.m as i64;
    let mut terms = Vec::with_capacity(2 * n + 1);
    let second_sign: i64 = if n == 1 && conv == Convention::OneCocycleLine { 1 } else { -1 };
    for i in 2..=n + 1 {
        let sign: i64 = if i % 2 == 0 { 1 } else { -1 };
        let mut omitted = x.to_vec();
        omitted.remove(i - 1);
        let a = bracket(t, &omitted);
        let b = f_pow(t, i - 2, bracket(t, &x[i - 1..]));
        terms.push((sign * c.eta[a][b] as i64 % m, omitted));
        let xi = x[i - 1];
        let moved: Vec<usize> = x[..i - 1]
            .iter()
            .map(|&y| t.op(y, xi))
            .chain(x[i..].iter().map(|&y| t.op(y, y)))
            .collect();
        terms.push((second_sign * sign, moved));
    }
    let tau_sign: i64 = match conv {
        Convention::Uniform => 1,
        Convention::Alternating => {
            if (n + 1) % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Convention::OneCocycleLine => {
            if n == 1 {
                -1
            } else {
                1
            }
        }
    };
    let mut skip2 = x.to_vec();
    skip2.remove(1);
    let a = bracket(t, &skip2);
    let b = bracket(t, &x[1..]);
    terms.push((tau_sign * c.tau[a][b] as i64 % m, x[1..].to_vec()));
    terms
}

/// Matrix of `delta^n` for per-pair coefficients under a sign convention.
pub fn boundary_matrix_with(t: &FTable, c: &PairCoefficients, n: usize, conv: Convention) -> Result<BoundaryMatrix> {
    check_degree(n, 1)?;
    check_coefficients(t, c)?;
    let order = t.order();
    let cols = order.pow(n as u32);
    let rows = order.pow(n as u32 + 1);
    let m = c.m as i64;
    let mut entries = vec![0u64; rows * cols];
    entries.par_chunks_mut(cols).enumerate().for_each(|(r, row)| {
        let x = tuple_of(r, order, n + 1);
        let mut acc = vec![0i64; cols];
        for (coef, tuple) in delta_terms(t, c, n, conv, &x) {
            let j = index_of(&tuple, order);
            acc[j] = (acc[j] + coef).rem_euclid(m);
        }
        for (o, a) in row.iter_mut().zip(acc) {
            *o = a as u64;
        }
    });
    Ok(BoundaryMatrix { degree: n, order, modulus: c.m, rows, cols, entries })
}

/// Evaluates `delta^n phi` pointwise, without assembling a matrix.
pub fn apply_delta(t: &FTable, c: &PairCoefficients, n: usize, conv: Convention, phi: &[u64]) -> Vec<u64> {
    let order = t.order();
    let m = c.m as i64;
    (0..order.pow(n as u32 + 1))
        .map(|r| {
            let x = tuple_of(r, order, n + 1);
            delta_terms(t, c, n, conv, &x)
                .into_iter()
                .fold(0i64, |acc, (coef, tuple)| (acc + coef * phi[index_of(&tuple, order)] as i64).rem_euclid(m))
                as u64
        })
        .collect()
}

/// First nonzero entry of `delta^(n+1) o delta^n`, as `(n, row tuple, column tuple, value)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDefect {
    pub degree: usize,
    pub row: Vec<usize>,
    pub col: Vec<usize>,
    pub value: u64,
}

pub fn complex_defects(t: &FTable, c: &PairCoefficients, conv: Convention) -> Result<Vec<ComplexDefect>> {
    let mats =
        (1..=MAX_DEGREE).map(|n| boundary_matrix_with(t, c, n, conv)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for w in mats.windows(2) {
        let (inner, outer) = (&w[0], &w[1]);
        let prod = outer.compose(inner);
        if let Some(pos) = prod.iter().position(|&v| v != 0) {
            let (r, col) = (pos / inner.cols, pos % inner.cols);
            out.push(ComplexDefect {
                degree: inner.degree,
                row: outer.tuple_of_row(r),
                col: tuple_of(col, t.order(), inner.degree),
                value: prod[pos],
            });
        }
    }
    Ok(out)
}

/// True iff `delta^2 delta^1` and `delta^3 delta^2` vanish mod m.
pub fn verify_complex(t: &FTable, module: &ScalarModule) -> bool {
    verify_complex_with(t, &module.pairs(t.order()), Convention::Uniform)
}

pub fn verify_complex_with(t: &FTable, c: &PairCoefficients, conv: Convention) -> bool {
    complex_defects(t, c, conv).map(|d| d.is_empty()).unwrap_or(false)
}

/// `H^n = ker delta^n / (im delta^(n-1) ∩ ker delta^n)`, with `C^0 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyResult {
    pub degree: usize,
    pub module: ScalarModule,
    pub convention: Convention,
    /// Over a prime modulus.
    pub dimension: Option<usize>,
    /// `H^n ≅ ⊕ Z/d`.
    pub elementary_divisors: Vec<u64>,
    /// `ker delta^n ≅ ⊕ Z/d`.
    pub cocycle_divisors: Vec<u64>,
    /// Whether `delta^n delta^(n-1) = 0` at this degree.
    pub image_in_kernel: bool,
    /// Cocycle representatives, one per elementary divisor.
    pub basis: Vec<Vec<u64>>,
}

impl CohomologyResult {
    pub fn cocycle_count(&self) -> u128 {
        self.cocycle_divisors.iter().map(|&d| d as u128).product()
    }
}

pub fn cohomology(t: &FTable, module: &ScalarModule, n: usize) -> Result<CohomologyResult> {
    cohomology_with(t, module, n, Convention::Uniform)
}

pub fn cohomology_with(t: &FTable, module: &ScalarModule, n: usize, conv: Convention) -> Result<CohomologyResult> {
    check_degree(n, 1)?;
    if n > 2 {
        return Err(Error::DegreeOutOfRange(n));
    }
    let pairs = module.pairs(t.order());
    let b = boundary_matrix_with(t, &pairs, n, conv)?;
    let a = if n > 1 { Some(boundary_matrix_with(t, &pairs, n - 1, conv)?) } else { None };
    let m = BigInt::from(module.m);
    let c = b.cols;

    // ker delta^n + m Z^c as the lattice V diag(e) Z^c
    let snf = smith_normal_form(&b.to_bigint());
    let mut kb = snf.v.clone();
    let mut cocycle_divisors = Vec::new();
    for j in 0..c {
        let e = match snf.diagonal.get(j) {
            Some(d) => &m / d.gcd(&m),
            None => BigInt::one(),
        };
        let order = &m / &e;
        if order > BigInt::one() {
            cocycle_divisors.push(order.to_u64().unwrap());
        }
        for i in 0..c {
            let v = kb.get(i, j).clone() * &e;
            kb.set(i, j, v);
        }
    }

    // im delta^(n-1) + m Z^c, then its intersection with the cocycle lattice
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    if let Some(a) = &a {
        let am = a.to_bigint();
        gens.extend((0..am.cols()).map(|j| am.column(j)));
    }
    for j in 0..c {
        let mut col = vec![BigInt::zero(); c];
        col[j] = m.clone();
        gens.push(col);
    }
    let neg_l = Matrix::from_columns(&gens, c).map(|v| -v.clone());
    let joint = integer_kernel(&kb.hcat(&neg_l));
    let coords: Vec<Vec<BigInt>> = (0..joint.cols()).map(|j| joint.column(j)[..c].to_vec()).collect();
    let s = Matrix::from_columns(&coords, c);
    let snf2 = smith_normal_form(&s);
    assert_eq!(snf2.rank(), c, "coboundary lattice contains m Z^c");

    let mut elementary_divisors = Vec::new();
    let mut basis = Vec::new();
    for (i, d) in snf2.diagonal.iter().enumerate() {
        if d > &BigInt::one() {
            elementary_divisors.push(d.to_u64().unwrap());
            let rep = kb.mul_vec(&snf2.u_inv.column(i));
            basis.push(rep.iter().map(|v| v.mod_floor(&m).to_u64().unwrap()).collect::<Vec<u64>>());
        }
    }
    for v in &basis {
        assert!(b.apply(v).iter().all(|&x| x == 0), "representative is a cocycle");
    }

    let image_in_kernel = a.as_ref().map_or(true, |a| b.compose(a).iter().all(|&v| v == 0));
    let dimension = if is_prime(module.m) {
        let p = module.m as i64;
        let rb = rank_mod_p(&b.rows_i64(), p);
        let overlap = match &a {
            None => 0,
            Some(a) => {
                let ba: Vec<Vec<i64>> =
                    b.compose(a).chunks(a.cols).map(|r| r.iter().map(|&v| v as i64).collect()).collect();
                rank_mod_p(&a.rows_i64(), p) - rank_mod_p(&ba, p)
            }
        };
        let dim = c - rb - overlap;
        assert_eq!(dim, elementary_divisors.len(), "field and lattice computations agree");
        assert_eq!(c - rb, cocycle_divisors.len(), "rank-nullity");
        Some(dim)
    } else {
        None
    };
    Ok(CohomologyResult {
        degree: n,
        module: *module,
        convention: conv,
        dimension,
        elementary_divisors,
        cocycle_divisors,
        image_in_kernel,
        basis,
    })
}

pub(crate) fn is_prime(m: u64) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

pub const BRUTE_FORCE_CAP: u128 = 10_000_000;

/// Every `phi` with `delta^n phi = 0`, found by evaluating the differential
/// pointwise on all `m^(|X|^n)` cochains.
pub fn brute_force_kernel(t: &FTable, module: &ScalarModule, n: usize) -> Result<Vec<Vec<u64>>> {
    brute_force_kernel_with(t, &module.pairs(t.order()), n, Convention::Uniform)
}

pub fn brute_force_kernel_with(t: &FTable, c: &PairCoefficients, n: usize, conv: Convention) -> Result<Vec<Vec<u64>>> {
    check_degree(n, 1)?;
    check_coefficients(t, c)?;
    let dim = t.order().pow(n as u32);
    let size = (c.m as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if size > BRUTE_FORCE_CAP {
        return Err(Error::SearchTooLarge { size, cap: BRUTE_FORCE_CAP });
    }
    let mut phi = vec![0u64; dim];
    let mut out = Vec::new();
    for _ in 0..size {
        if apply_delta(t, c, n, conv, &phi).iter().all(|&v| v == 0) {
            out.push(phi.clone());
        }
        for slot in phi.iter_mut() {
            *slot += 1;
            if *slot < c.m {
                break;
            }
            *slot = 0;
        }
    }
    Ok(out)
}

/// The integer matrix of `d_n : C_n -> C_(n-1)`,
/// `d_n(x) = Σ_{i=2}^{n} (-1)^i [(x1..^xi..xn) - (x1*xi, .., x(i-1)*xi, f(x(i+1)), .., f(xn))]`.
pub fn rack_homology_boundary(t: &FTable, n: usize) -> Matrix<i64> {
    let order = t.order();
    let cols = order.pow(n as u32);
    let rows = if n == 0 { 0 } else { order.pow(n as u32 - 1) };
    let mut out = Matrix::zeros(rows, cols);
    if n <= 1 {
        return out;
    }
    for col in 0..cols {
        let x = tuple_of(col, order, n);
        for i in 2..=n {
            let sign: i64 = if i % 2 == 0 { 1 } else { -1 };
            let mut omitted = x.clone();
            omitted.remove(i - 1);
            let xi = x[i - 1];
            let moved: Vec<usize> =
                x[..i - 1].iter().map(|&y| t.op(y, xi)).chain(x[i..].iter().map(|&y| t.op(y, y))).collect();
            let (r1, r2) = (index_of(&omitted, order), index_of(&moved, order));
            out.set(r1, col, out.get(r1, col) + sign);
            out.set(r2, col, out.get(r2, col) - sign);
        }
    }
    out
}

/// `H_n = ker d_n / im d_(n+1)` over the integers: free rank and torsion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

pub fn rack_homology(t: &FTable, n: usize) -> Result<HomologyGroup> {
    let dn = rack_homology_boundary(t, n).map(|&v| BigInt::from(v));
    let dn1 = rack_homology_boundary(t, n + 1).map(|&v| BigInt::from(v));
    let composite = dn.mul(&dn1);
    if !(0..composite.rows()).all(|i| composite.row(i).iter().all(Zero::is_zero)) {
        return Err(Error::Precondition { what: "d_n d_(n+1) = 0".into(), witness: vec![n] });
    }
    let rank_n = smith_normal_form(&dn).rank();
    let s = smith_normal_form(&dn1);
    let torsion = s.diagonal.iter().filter(|d| *d > &BigInt::one()).map(|d| d.to_u64().unwrap()).collect();
    Ok(HomologyGroup { degree: n, free_rank: dn.cols() - rank_n - s.rank(), torsion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{make_alexander, make_trivial};

    #[test]
    fn bracket_examples() {
        let t = make_alexander(3, 1, 1).unwrap();
        assert_eq!(bracket(&t, &[2]), 2);
        assert_eq!(bracket(&t, &[1, 2]), t.op(1, 2));
        // (0*1)*f(2) = 1 * 1 = 2
        assert_eq!(bracket(&t, &[0, 1, 2]), 2);
        assert_eq!(bracket_deletion_failure(&t, &[0, 1, 2, 1]), None);
    }

    #[test]
    fn degree_one_rows() {
        let t = make_alexander(3, 1, 1).unwrap();
        let module = ScalarModule::new(3, 1, 1).unwrap();
        let d1 = boundary_matrix(&t, &module, 1).unwrap();
        assert_eq!(d1.row(d1.row_of(&[0, 1])), &[1, 0, 0]);
        for x in 0..3 {
            let mut expected = [0i64; 3];
            expected[x] += 2;
            expected[t.op(x, x)] -= 1;
            let expected: Vec<u64> = expected.iter().map(|v| v.rem_euclid(3) as u64).collect();
            assert_eq!(d1.row(d1.row_of(&[x, x])), &expected[..]);
        }
    }

    #[test]
    fn degree_two_matches_displayed_equation() {
        let t = make_alexander(3, 1, 1).unwrap();
        let d2 = boundary_matrix(&t, &ScalarModule::new(3, 1, 1).unwrap(), 2).unwrap();
        for (i, j, k) in itertools(3) {
            let mut row = [0i64; 9];
            row[3 * i + j] += 1;
            row[3 * ((i + j) % 3) + (2 * k) % 3] += 1;
            row[3 * i + k] -= 1;
            row[3 * j + k] -= 1;
            row[3 * ((i + k) % 3) + (j + k) % 3] -= 1;
            // the matrix row is the negative of the displayed combination
            let expected: Vec<u64> = row.iter().map(|v| (-v).rem_euclid(3) as u64).collect();
            assert_eq!(d2.row(d2.row_of(&[i, j, k])), &expected[..], "({i},{j},{k})");
        }
    }

    fn itertools(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
        (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
    }

    #[test]
    fn order_one_closed_form() {
        let t = make_trivial(1, &[0]).unwrap();
        let module = ScalarModule::new(3, 1, 1).unwrap();
        let d1 = boundary_matrix(&t, &module, 1).unwrap();
        assert_eq!(d1.entries, vec![1]);
        let h1 = cohomology(&t, &module, 1).unwrap();
        assert_eq!(h1.dimension, Some(0));
        assert_eq!(brute_force_kernel(&t, &module, 1).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn matrix_agrees_with_pointwise_evaluation() {
        let t = make_alexander(3, 1, 2).unwrap();
        let module = ScalarModule::new(3, 1, 2).unwrap();
        for conv in [Convention::Uniform, Convention::Alternating, Convention::OneCocycleLine] {
            let c = module.pairs(3);
            for n in 1..=2 {
                let d = boundary_matrix_with(&t, &c, n, conv).unwrap();
                for seed in 0..20u64 {
                    let phi: Vec<u64> = (0..d.cols).map(|i| (seed * 7 + i as u64 * 5 + i as u64 * i as u64) % 3).collect();
                    assert_eq!(d.apply(&phi), apply_delta(&t, &c, n, conv, &phi));
                }
            }
        }
    }

    #[test]
    fn cohomology_of_z3_examples() {
        let t = make_alexander(3, 1, 1).unwrap();
        let module = ScalarModule::new(3, 1, 1).unwrap();
        let h1 = cohomology(&t, &module, 1).unwrap();
        assert_eq!(h1.dimension, Some(1));
        assert_eq!(h1.cocycle_count(), brute_force_kernel(&t, &module, 1).unwrap().len() as u128);
        let h2 = cohomology(&t, &module, 2).unwrap();
        assert_eq!(h2.cocycle_divisors.len(), 2);
        assert_eq!(h2.cocycle_count(), brute_force_kernel(&t, &module, 2).unwrap().len() as u128);

        let t = make_alexander(3, 1, 2).unwrap();
        let module = ScalarModule::new(3, 1, 2).unwrap();
        assert_eq!(cohomology(&t, &module, 1).unwrap().dimension, Some(1));
        assert_eq!(cohomology(&t, &module, 2).unwrap().cocycle_divisors.len(), 3);
    }

    #[test]
    fn composite_modulus_uses_divisors() {
        let t = make_alexander(2, 1, 1).unwrap();
        let module = ScalarModule::new(4, 1, 1).unwrap();
        let h = cohomology(&t, &module, 1).unwrap();
        assert_eq!(h.dimension, None);
        assert_eq!(h.cocycle_count(), brute_force_kernel(&t, &module, 1).unwrap().len() as u128);
    }

    #[test]
    fn brute_force_cap() {
        let t = make_alexander(5, 1, 1).unwrap();
        let module = ScalarModule::new(5, 1, 1).unwrap();
        assert!(matches!(brute_force_kernel(&t, &module, 2), Err(Error::SearchTooLarge { .. })));
    }

    #[test]
    fn rack_homology_boundaries() {
        let r3 = crate::make_f_dihedral(3, 1, 0).unwrap();
        assert!(rack_homology_boundary(&r3, 1).is_zero_mod(&1));
        let triv = make_trivial(3, &[0, 1, 2]).unwrap();
        let d2 = rack_homology_boundary(&triv, 2);
        assert!((0..d2.rows()).all(|i| d2.row(i).iter().all(|&v| v == 0)));
        let d3 = rack_homology_boundary(&r3, 3);
        let d2 = rack_homology_boundary(&r3, 2);
        let prod = d2.mul(&d3);
        assert!((0..prod.rows()).all(|i| prod.row(i).iter().all(|&v| v == 0)));
        assert!(rack_homology(&r3, 2).is_ok());
    }
}
