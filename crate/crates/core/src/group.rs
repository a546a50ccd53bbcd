//! Finite groups as multiplication tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group. The laws are checked when the table is built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupTable {
    order: usize,
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
}

#[derive(Deserialize)]
struct GroupJson {
    mult: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for GroupTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = GroupJson::deserialize(d)?;
        GroupTable::from_mult(raw.mult).map_err(D::Error::custom)
    }
}

impl GroupTable {
    /// Builds a group from its multiplication table, deriving the identity
    /// and inverses.
    pub fn from_mult(mult: Vec<Vec<usize>>) -> Result<Self> {
        let n = mult.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty carrier".into()));
        }
        for (i, row) in mult.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has wrong length")));
            }
            if row.iter().any(|&v| v >= n) {
                return Err(Error::InvalidGroup(format!("row {i} has entry out of range")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mult[e][a] == a && mult[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let inv = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mult[a][b] == identity && mult[b][a] == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("{a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupTable { order: n, mult, inv, identity })
    }

    /// `Z_n` under addition.
    pub fn cyclic(n: usize) -> Result<Self> {
        GroupTable::from_mult((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    /// Direct product; element `(a, b)` has index `a * |H| + b`.
    pub fn product(&self, other: &GroupTable) -> GroupTable {
        let (n, m) = (self.order, other.order);
        let mult = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        GroupTable::from_mult(mult).expect("product of groups is a group")
    }

    /// The symmetric group on three letters, generated by `s` of order 2
    /// and `t` of order 3 with `ts = st^2`. Elements are indexed
    /// `e, s, t, t^2, st, st^2`.
    pub fn s3() -> GroupTable {
        // s^a t^b as (a, b); t^b s^c = s^c t^{b (-1)^c}.
        const ELEMS: [(usize, usize); 6] = [(0, 0), (1, 0), (0, 1), (0, 2), (1, 1), (1, 2)];
        let index = |a: usize, b: usize| ELEMS.iter().position(|&e| e == (a % 2, b % 3)).unwrap();
        let mult = ELEMS
            .iter()
            .map(|&(a, b)| {
                ELEMS
                    .iter()
                    .map(|&(c, d)| {
                        let twisted = if c == 1 { (3 - b) % 3 } else { b };
                        index(a + c, twisted + d)
                    })
                    .collect()
            })
            .collect();
        GroupTable::from_mult(mult).expect("S3 table is a group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mult_table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Checks that `f` is a group endomorphism.
    pub fn check_endomorphism(&self, f: &[usize]) -> Result<()> {
        crate::table::check_map(f, self.order, self.order)?;
        for a in 0..self.order {
            for b in 0..self.order {
                if f[self.mul(a, b)] != self.mul(f[a], f[b]) {
                    return Err(Error::NotEndomorphism { a, b });
                }
            }
        }
        Ok(())
    }

    /// Checks that `f` is a bijective endomorphism.
    pub fn check_automorphism(&self, f: &[usize]) -> Result<()> {
        self.check_endomorphism(f)?;
        if !crate::table::is_permutation(f) {
            return Err(Error::NotAutomorphism);
        }
        Ok(())
    }
}

/// Tests whether a table is the operation of an abelian group.
pub fn is_abelian_group_table(t: &crate::FTable) -> bool {
    GroupTable::from_mult(t.rows()).map(|g| g.is_abelian()).unwrap_or(false)
}
