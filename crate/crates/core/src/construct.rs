//! Standard families of f-quandles.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::table::{check_map, FTable};

pub(crate) fn require_unit(value: u64, modulus: u64) -> Result<()> {
    if modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    if value.gcd(&modulus) != 1 {
        return Err(Error::NotAUnit { value, modulus });
    }
    Ok(())
}

fn check_diagonal(t: FTable, requested: &[usize]) -> Result<FTable> {
    let built = t.derived_f();
    if built != requested {
        return Err(Error::DiagonalMismatch { built, requested: requested.to_vec() });
    }
    Ok(t)
}

/// `x * y = f(x)`.
pub fn make_trivial(n: usize, f: &[usize]) -> Result<FTable> {
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    check_map(f, n, n)?;
    let t = FTable::from_fn(n, |x, _| f[x])?;
    check_diagonal(t, f)
}

/// How a group and an endomorphism combine into an operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConjugationVariant {
    /// `x * y = y^-1 x f(y)`, for any endomorphism `f`.
    Plain,
    /// `x * y = f(y)^-1 f(x) f(y)`, for an automorphism `f`.
    TwistedConj,
}

pub fn make_conjugation(g: &GroupTable, f: &[usize], variant: ConjugationVariant) -> Result<FTable> {
    match variant {
        ConjugationVariant::Plain => g.check_endomorphism(f)?,
        // With non-injective f the right translations collapse.
        ConjugationVariant::TwistedConj => g.check_automorphism(f)?,
    }
    let t = FTable::from_fn(g.order(), |x, y| match variant {
        ConjugationVariant::Plain => g.mul(g.mul(g.inv(y), x), f[y]),
        ConjugationVariant::TwistedConj => g.mul(g.mul(g.inv(f[y]), f[x]), f[y]),
    })?;
    check_diagonal(t, f)
}

/// `x * y = 2ay - ax + b (mod n)`, with structure map `ax + b`.
pub fn make_f_dihedral(n: u64, a: u64, b: u64) -> Result<FTable> {
    require_unit(a, n)?;
    let (a, b) = (a % n, b % n);
    let t = FTable::from_fn(n as usize, |x, y| {
        let (x, y) = (x as u64, y as u64);
        ((2 * a * y + n * n - (a * x) % n + b) % n) as usize
    })?;
    let f: Vec<usize> = (0..n).map(|x| ((a * x + b) % n) as usize).collect();
    check_diagonal(t, &f)
}

/// `x * y = Tx + Sy (mod m)`, with structure map `(T+S)x`.
pub fn make_alexander(m: u64, t: u64, s: u64) -> Result<FTable> {
    require_unit(t, m)?;
    let (t, s) = (t % m, s % m);
    let table = FTable::from_fn(m as usize, |x, y| ((t * x as u64 + s * y as u64) % m) as usize)?;
    let f: Vec<usize> = (0..m).map(|x| (((t + s) * x) % m) as usize).collect();
    check_diagonal(table, &f)
}

/// Assigns each element the index of its right translation among the
/// distinct translations, in order of first appearance.
pub fn translation_classes(t: &FTable) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let classes = (0..t.order())
        .map(|x| {
            let r = t.right_translation(x);
            match perms.iter().position(|p| *p == r) {
                Some(i) => i,
                None => {
                    perms.push(r);
                    perms.len() - 1
                }
            }
        })
        .collect();
    (classes, perms)
}

/// The set of distinct right translations with `R_x * R_y = R_{x*y}`.
/// Fails when two elements share a translation but their products do not.
pub fn translation_crossed_set(t: &FTable) -> Result<FTable> {
    let (class, perms) = translation_classes(t);
    quotient_by_classes(t, &class, perms.len())
}

/// Builds the induced table on `k` classes, checking well-definedness.
pub(crate) fn quotient_by_classes(t: &FTable, class: &[usize], k: usize) -> Result<FTable> {
    let n = t.order();
    let mut cells: Vec<Option<usize>> = vec![None; k * k];
    // The first representative pair sets each cell; every other pair must agree.
    for x in 0..n {
        for y in 0..n {
            let target = class[t.op(x, y)];
            let cell = &mut cells[class[x] * k + class[y]];
            match *cell {
                None => *cell = Some(target),
                Some(prev) if prev != target => {
                    let (x0, y0) = first_pair(class, class[x], class[y]);
                    return Err(Error::IllDefinedQuotient { witness: vec![x0, y0, x, y] });
                }
                Some(_) => {}
            }
        }
    }
    let cells = cells.into_iter().map(|c| c.expect("every class is inhabited")).collect();
    Ok(FTable::from_cells_unchecked(k, cells))
}

fn first_pair(class: &[usize], cx: usize, cy: usize) -> (usize, usize) {
    let x = class.iter().position(|&c| c == cx).unwrap();
    let y = class.iter().position(|&c| c == cy).unwrap();
    (x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{validate, Level};

    fn rows(t: &FTable) -> Vec<Vec<usize>> {
        t.rows()
    }

    #[test]
    fn trivial_examples() {
        assert_eq!(rows(&make_trivial(2, &[0, 1]).unwrap()), vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(rows(&make_trivial(2, &[1, 0]).unwrap()), vec![vec![1, 1], vec![0, 0]]);
        assert_eq!(rows(&make_trivial(1, &[0]).unwrap()), vec![vec![0]]);
        assert!(make_trivial(2, &[0, 2]).is_err());
    }

    #[test]
    fn dihedral_examples() {
        assert_eq!(
            rows(&make_f_dihedral(3, 1, 0).unwrap()),
            vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]
        );
        let t = make_f_dihedral(3, 2, 0).unwrap();
        assert!((0..3).all(|x| (0..3).all(|y| t.op(x, y) == (x + y) % 3)));
        let t = make_f_dihedral(2, 1, 1).unwrap();
        assert!((0..2).all(|x| (0..2).all(|y| t.op(x, y) == (x + 1) % 2)));
        assert_eq!(make_f_dihedral(4, 2, 0), Err(Error::NotAUnit { value: 2, modulus: 4 }));
    }

    #[test]
    fn alexander_examples() {
        let a = make_alexander(3, 1, 1).unwrap();
        assert_eq!(rows(&a), vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
        assert_eq!(a.derived_f(), vec![0, 2, 1]);
        let b = make_alexander(3, 1, 2).unwrap();
        assert_eq!(rows(&b), vec![vec![0, 2, 1], vec![1, 0, 2], vec![2, 1, 0]]);
        assert_eq!(b.derived_f(), vec![0, 0, 0]);
        assert_eq!(rows(&make_alexander(2, 1, 1).unwrap()), vec![vec![0, 1], vec![1, 0]]);
        assert!(make_alexander(4, 2, 1).is_err());
    }

    #[test]
    fn conjugation_reductions() {
        let z3 = GroupTable::cyclic(3).unwrap();
        let t = make_conjugation(&z3, &[0, 1, 2], ConjugationVariant::Plain).unwrap();
        assert!((0..3).all(|x| (0..3).all(|y| t.op(x, y) == x)));
        let s3 = GroupTable::s3();
        let id: Vec<usize> = (0..6).collect();
        let t = make_conjugation(&s3, &id, ConjugationVariant::Plain).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(t.op(x, y), s3.mul(s3.mul(s3.inv(y), x), y));
            }
        }
        assert!(validate(&t, Level::Quandle).passed);
    }

    #[test]
    fn conjugation_rejects_non_endomorphism() {
        let z4 = GroupTable::cyclic(4).unwrap();
        assert!(make_conjugation(&z4, &[0, 1, 1, 0], ConjugationVariant::Plain).is_err());
        assert!(make_conjugation(&z4, &[0, 2, 0, 2], ConjugationVariant::TwistedConj).is_err());
        assert!(make_conjugation(&z4, &[0, 2, 0, 2], ConjugationVariant::Plain).is_ok());
    }

    #[test]
    fn translation_examples() {
        let t = make_trivial(2, &[0, 1]).unwrap();
        assert_eq!(rows(&translation_crossed_set(&t).unwrap()), vec![vec![0]]);
        let z2 = make_alexander(2, 1, 1).unwrap();
        assert_eq!(translation_crossed_set(&z2).unwrap(), z2);
        let r3 = make_f_dihedral(3, 1, 0).unwrap();
        let q = translation_crossed_set(&r3).unwrap();
        assert_eq!(q.order(), 3);
        assert!(validate(&q, Level::Crossed).passed);
    }
}
