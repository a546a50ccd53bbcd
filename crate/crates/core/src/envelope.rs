//! Enveloping group presentations and the quotient to a crossed set.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::construct::quotient_by_classes;
use crate::error::{Error, Result};
use crate::table::{validate, FTable, Level};

/// A finitely presented group. Letters are signed 1-based generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generator_count: usize,
    pub relators: Vec<Vec<i64>>,
    /// Per relator: reduces to the empty word under free reduction.
    pub freely_trivial: Vec<bool>,
    /// Per relator: a commutator `a b a^-1 b^-1` or freely trivial.
    pub commutator: Vec<bool>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<Vec<i64>>) -> Result<Self> {
        for (i, w) in relators.iter().enumerate() {
            if w.is_empty() || w.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > generator_count) {
                return Err(Error::Dimension(format!("relator {i} is empty or has a letter out of range")));
            }
        }
        let freely_trivial = relators.iter().map(|w| free_reduce(w).is_empty()).collect();
        let commutator = relators.iter().map(|w| is_commutator(w) || free_reduce(w).is_empty()).collect();
        Ok(Presentation { generator_count, relators, freely_trivial, commutator })
    }

    pub fn all_commutators(&self) -> bool {
        self.commutator.iter().all(|&c| c)
    }

    /// `F := FreeGroup(n);` then `rels := [ w1, w2, ... ];`, each word a
    /// `*`-joined list of `F.i` or `F.i^-1`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "F := FreeGroup({});", self.generator_count).unwrap();
        let words: Vec<String> = self
            .relators
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&l| if l > 0 { format!("F.{l}") } else { format!("F.{}^-1", -l) })
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect();
        if words.is_empty() {
            out.push_str("rels := [ ];\n");
        } else {
            writeln!(out, "rels := [ {} ];", words.join(", ")).unwrap();
        }
        out
    }

    /// Parses the output of [`Presentation::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |what: &str| Error::Dimension(format!("presentation text: {what}"));
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let head = lines.next().ok_or_else(|| bad("missing header"))?;
        let n: usize = head
            .strip_prefix("F := FreeGroup(")
            .and_then(|r| r.strip_suffix(");"))
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("header must be `F := FreeGroup(n);`"))?;
        let body = lines.next().ok_or_else(|| bad("missing relator list"))?;
        let inner = body
            .strip_prefix("rels := [")
            .and_then(|r| r.strip_suffix("];"))
            .ok_or_else(|| bad("relators must be `rels := [ ... ];`"))?
            .trim();
        let mut relators = Vec::new();
        if !inner.is_empty() {
            for word in inner.split(',') {
                let letters = word
                    .trim()
                    .split('*')
                    .map(|tok| {
                        let tok = tok.trim();
                        let (gen, sign) = match tok.strip_suffix("^-1") {
                            Some(g) => (g, -1),
                            None => (tok, 1),
                        };
                        gen.strip_prefix("F.").and_then(|i| i.parse::<i64>().ok()).map(|i| sign * i)
                    })
                    .collect::<Option<Vec<i64>>>()
                    .ok_or_else(|| bad("letters must be `F.i` or `F.i^-1`"))?;
                relators.push(letters);
            }
        }
        if lines.next().is_some() {
            return Err(bad("trailing content"));
        }
        Presentation::new(n, relators)
    }
}

pub fn free_reduce(word: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn is_commutator(w: &[i64]) -> bool {
    w.len() == 4 && w[2] == -w[0] && w[3] == -w[1]
}

/// Generators `x`, relators `(x*y) y x^-1 f(y)^-1` for every pair, i.e.
/// `x*y = f(y) x y^-1`, ordered by `(x, y)`.
pub fn enveloping_presentation(t: &FTable) -> Presentation {
    let n = t.order();
    let g = |x: usize| x as i64 + 1;
    let relators = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| vec![g(t.op(x, y)), g(y), -g(x), -g(t.op(y, y))])
        .collect();
    Presentation::new(n, relators).expect("letters are in range")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossedQuotient {
    pub table: FTable,
    pub iterations: usize,
    /// The composite projection from the input onto `table`.
    pub projection: Vec<usize>,
}

/// Classes of the closure of `x ~ x'` iff some `y` has `x*y = f(x')` and
/// `y*x = f(y)`, numbered by first appearance.
pub fn crossed_relation_classes(t: &FTable) -> (Vec<usize>, usize) {
    let n = t.order();
    let f = t.derived_f();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for x in 0..n {
        for y in 0..n {
            if t.op(y, x) != f[y] {
                continue;
            }
            for xp in 0..n {
                if t.op(x, y) == f[xp] {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, xp));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut classes = vec![0; n];
    let mut k = 0;
    for x in 0..n {
        let r = find(&mut parent, x);
        if label[r] == usize::MAX {
            label[r] = k;
            k += 1;
        }
        classes[x] = label[r];
    }
    (classes, k)
}

/// Quotients by the closed relation until the result is a crossed set.
pub fn quotient_crossed_set(t: &FTable) -> Result<CrossedQuotient> {
    let mut current = t.clone();
    let mut projection: Vec<usize> = (0..t.order()).collect();
    let mut iterations = 0;
    while !validate(&current, Level::Crossed).passed {
        let (classes, k) = crossed_relation_classes(&current);
        if k == current.order() {
            let report = validate(&current, Level::Crossed);
            let witness = report.violations.first().map(|v| v.witness.clone()).unwrap_or_default();
            return Err(Error::Precondition { what: "relation identifies something in a non-crossed structure".into(), witness });
        }
        current = quotient_by_classes(&current, &classes, k)?;
        for p in projection.iter_mut() {
            *p = classes[*p];
        }
        iterations += 1;
    }
    Ok(CrossedQuotient { table: current, iterations, projection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{is_homomorphism, make_f_dihedral, make_trivial};

    #[test]
    fn point_presentation() {
        let p = enveloping_presentation(&make_trivial(1, &[0]).unwrap());
        assert_eq!(p.generator_count, 1);
        assert_eq!(p.relators, vec![vec![1, 1, -1, -1]]);
        assert_eq!(p.freely_trivial, vec![true]);
        assert_eq!(p.to_text(), "F := FreeGroup(1);\nrels := [ F.1*F.1*F.1^-1*F.1^-1 ];\n");
    }

    #[test]
    fn trivial_quandle_relators_are_commutators() {
        let p = enveloping_presentation(&make_trivial(2, &[0, 1]).unwrap());
        assert_eq!(p.relators.len(), 4);
        assert!(p.all_commutators());
        assert_eq!(p.relators[1], vec![1, 2, -1, -2]);
    }

    #[test]
    fn dihedral_relators() {
        let t = make_f_dihedral(3, 1, 0).unwrap();
        let p = enveloping_presentation(&t);
        assert_eq!(p.relators.len(), 9);
        for x in 0..3 {
            for y in 0..3 {
                let w = &p.relators[3 * x + y];
                assert_eq!(w, &vec![t.op(x, y) as i64 + 1, y as i64 + 1, -(x as i64) - 1, -(y as i64) - 1]);
            }
        }
        assert_eq!(Presentation::from_text(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn text_parse_rejects_garbage() {
        assert!(Presentation::from_text("F := FreeGroup(1);\nrels := [ F.2 ];").is_err());
        assert!(Presentation::from_text("G := FreeGroup(1);\nrels := [ ];").is_err());
        assert_eq!(Presentation::from_text("F := FreeGroup(2);\nrels := [ ];").unwrap().relators.len(), 0);
    }

    #[test]
    fn crossed_input_is_fixed() {
        let t = make_trivial(3, &[0, 1, 2]).unwrap();
        let q = quotient_crossed_set(&t).unwrap();
        assert_eq!((q.table, q.iterations), (t, 0));
    }

    #[test]
    fn projection_is_a_homomorphism() {
        let t = crate::make_alexander(3, 1, 2).unwrap();
        if let Ok(q) = quotient_crossed_set(&t) {
            assert!(is_homomorphism(&t, &q.table, &q.projection).unwrap());
            assert!(validate(&q.table, Level::Crossed).passed);
        }
    }
}
