//! Extensions of f-quandles by dynamical and constant cocycles, modules,
//! generalized 2-cocycles, and 2-cocycles imported from group extensions.

use serde::{Deserialize, Serialize};

use crate::construct::{make_conjugation, require_unit, ConjugationVariant};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::table::{check_map, is_permutation, AxiomReport, Condition, FTable, Level};

/// `(x, a) * (y, b) = (x*y, alpha_{x,y}(a, b))` over a fiber `0..fiber_order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynamicalCocycle {
    pub base_order: usize,
    pub fiber_order: usize,
    /// `alpha[x][y][a][b]`.
    pub alpha: Vec<Vec<Vec<Vec<usize>>>>,
    pub g: Vec<usize>,
}

impl DynamicalCocycle {
    pub fn from_fn(
        base_order: usize,
        fiber_order: usize,
        g: Vec<usize>,
        mut alpha: impl FnMut(usize, usize, usize, usize) -> usize,
    ) -> Self {
        let alpha = (0..base_order)
            .map(|x| {
                (0..base_order)
                    .map(|y| (0..fiber_order).map(|a| (0..fiber_order).map(|b| alpha(x, y, a, b)).collect()).collect())
                    .collect()
            })
            .collect();
        DynamicalCocycle { base_order, fiber_order, alpha, g }
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize, a: usize, b: usize) -> usize {
        self.alpha[x][y][a][b]
    }

    fn check_shape(&self, base: &FTable) -> Result<()> {
        let (n, k) = (self.base_order, self.fiber_order);
        if base.order() != n {
            return Err(Error::SizeMismatch(base.order(), n));
        }
        if k == 0 {
            return Err(Error::Dimension("fiber must be non-empty".into()));
        }
        check_map(&self.g, k, k)?;
        let shape_ok = self.alpha.len() == n
            && self.alpha.iter().all(|row| {
                row.len() == n
                    && row.iter().all(|m| m.len() == k && m.iter().all(|r| r.len() == k && r.iter().all(|&v| v < k)))
            });
        if !shape_ok {
            return Err(Error::Dimension(format!("alpha must be {n}x{n} arrays of {k}x{k} entries in 0..{k}")));
        }
        Ok(())
    }
}

/// Checks the cocycle conditions at `level`: the twisted identity always,
/// bijectivity from rack level, `alpha_{x,x}(a,a) = g(a)` from quandle
/// level, and the crossed clause at crossed level. Shelf level checks the
/// identity alone.
pub fn check_dynamical_cocycle(base: &FTable, c: &DynamicalCocycle, level: Level) -> Result<AxiomReport> {
    c.check_shape(base)?;
    let (n, k) = (base.order(), c.fiber_order);
    let f = base.derived_f();
    let mut report = AxiomReport::new(level);
    'identity: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (xy, xz, yz) = (base.op(x, y), base.op(x, z), base.op(y, z));
                for a in 0..k {
                    for b in 0..k {
                        for cc in 0..k {
                            let lhs = c.at(xy, f[z], c.at(x, y, a, b), c.g[cc]);
                            let rhs = c.at(xz, yz, c.at(x, z, a, cc), c.at(y, z, b, cc));
                            if lhs != rhs {
                                report.push(Condition::CocycleIdentity, vec![x, y, z, a, b, cc]);
                                break 'identity;
                            }
                        }
                    }
                }
            }
        }
    }
    if level >= Level::Rack {
        'bij: for x in 0..n {
            for y in 0..n {
                for b in 0..k {
                    let col: Vec<usize> = (0..k).map(|a| c.at(x, y, a, b)).collect();
                    if !is_permutation(&col) {
                        report.push(Condition::CocycleBijective, vec![x, y, b]);
                        break 'bij;
                    }
                }
            }
        }
    }
    if level >= Level::Quandle {
        'diag: for x in 0..n {
            for a in 0..k {
                if c.at(x, x, a, a) != c.g[a] {
                    report.push(Condition::CocycleDiagonal, vec![x, a]);
                    break 'diag;
                }
            }
        }
    }
    if level >= Level::Crossed {
        'crossed: for x in 0..n {
            for y in 0..n {
                if base.op(y, x) != f[y] {
                    continue;
                }
                for a in 0..k {
                    for b in 0..k {
                        if c.at(y, x, b, a) == c.g[b] && c.at(x, y, a, b) != c.g[a] {
                            report.push(Condition::CocycleCrossed, vec![x, y, a, b]);
                            break 'crossed;
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The table of `X × A`, element `(x, a)` at index `x * |A| + a`.
pub fn build_extension(base: &FTable, c: &DynamicalCocycle) -> Result<FTable> {
    c.check_shape(base)?;
    let k = c.fiber_order;
    FTable::from_fn(base.order() * k, |p, q| {
        let (x, a, y, b) = (p / k, p % k, q / k, q % k);
        base.op(x, y) * k + c.at(x, y, a, b)
    })
}

/// `(x, a) -> (f(x), g(a))`, the structure map the extension is checked against.
pub fn extension_structure_map(base: &FTable, c: &DynamicalCocycle) -> Vec<usize> {
    let f = base.derived_f();
    let k = c.fiber_order;
    (0..base.order() * k).map(|p| f[p / k] * k + c.g[p % k]).collect()
}

/// Constant cocycle `lambda_{x,y}`, a permutation of the fiber for each pair.
pub fn check_constant_cocycle(base: &FTable, lambda: &[Vec<Vec<usize>>], level: Level) -> Result<AxiomReport> {
    let n = base.order();
    if lambda.len() != n || lambda.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("lambda must be {n}x{n}")));
    }
    let k = lambda[0][0].len();
    for x in 0..n {
        for y in 0..n {
            if lambda[x][y].len() != k || lambda[x][y].iter().any(|&v| v >= k) || !is_permutation(&lambda[x][y]) {
                return Err(Error::NotAPermutation { x, y });
            }
        }
    }
    let f = base.derived_f();
    let mut report = AxiomReport::new(level);
    'identity: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (xy, xz, yz) = (base.op(x, y), base.op(x, z), base.op(y, z));
                for a in 0..k {
                    if lambda[xy][f[z]][lambda[x][y][a]] != lambda[xz][yz][lambda[x][z][a]] {
                        report.push(Condition::ConstantIdentity, vec![x, y, z, a]);
                        break 'identity;
                    }
                }
            }
        }
    }
    if level >= Level::Quandle {
        'diag: for x in 0..n {
            for a in 0..k {
                if lambda[x][x][a] != a {
                    report.push(Condition::ConstantDiagonal, vec![x, a]);
                    break 'diag;
                }
            }
        }
    }
    if level >= Level::Crossed {
        'crossed: for x in 0..n {
            for y in 0..n {
                if base.op(y, x) != f[y] || (0..k).all(|a| lambda[x][y][a] == a) {
                    continue;
                }
                if let Some(b) = (0..k).find(|&b| lambda[y][x][b] == b) {
                    report.push(Condition::ConstantCrossed, vec![x, y, b]);
                    break 'crossed;
                }
            }
        }
    }
    Ok(report)
}

/// The fiber map of a module, either a multiplier or an explicit array
/// (which must then be additive).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FiberMap {
    Scalar(u64),
    Map(Vec<u64>),
}

impl FiberMap {
    /// The multiplier `g(1)`, after checking additivity of an explicit map.
    pub fn multiplier(&self, m: u64) -> Result<u64> {
        match self {
            FiberMap::Scalar(g) => Ok(g % m),
            FiberMap::Map(map) => {
                if map.len() as u64 != m || map.iter().any(|&v| v >= m) {
                    return Err(Error::Dimension(format!("fiber map must have {m} entries below {m}")));
                }
                let g = if m > 1 { map[1] } else { 0 };
                match (0..m).find(|&a| map[a as usize] != (g * a) % m) {
                    None => Ok(g),
                    Some(a) => Err(Error::Precondition { what: "fiber map is additive".into(), witness: vec![a as usize] }),
                }
            }
        }
    }
}

/// Coefficient data over the fiber `Z_m`: `alpha_{x,y}(a, b) =
/// eta_{x,y} a + tau_{x,y} b + kappa_{x,y}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleData {
    pub base_order: usize,
    pub m: u64,
    pub eta: Vec<Vec<u64>>,
    pub tau: Vec<Vec<u64>>,
    pub g: FiberMap,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<Vec<Vec<u64>>>,
}

impl ModuleData {
    /// Constant coefficients `eta = T`, `tau = S`, multiplier `g`.
    pub fn scalar(base_order: usize, m: u64, t: u64, s: u64, g: u64) -> Result<Self> {
        let md = ModuleData {
            base_order,
            m,
            eta: vec![vec![t % m; base_order]; base_order],
            tau: vec![vec![s % m; base_order]; base_order],
            g: FiberMap::Scalar(g % m),
            kappa: None,
        };
        md.check_shape()?;
        Ok(md)
    }

    pub fn with_kappa(mut self, kappa: Vec<Vec<u64>>) -> Self {
        self.kappa = Some(kappa);
        self
    }

    pub fn check_shape(&self) -> Result<u64> {
        if self.m == 0 {
            return Err(Error::ZeroModulus);
        }
        let n = self.base_order;
        let square = |a: &Vec<Vec<u64>>| a.len() == n && a.iter().all(|r| r.len() == n);
        if !square(&self.eta) || !square(&self.tau) || self.kappa.as_ref().is_some_and(|k| !square(k)) {
            return Err(Error::Dimension(format!("module coefficients must be {n}x{n}")));
        }
        for row in &self.eta {
            for &e in row {
                require_unit(e % self.m, self.m)?;
            }
        }
        self.g.multiplier(self.m)
    }

    fn kappa_at(&self, x: usize, y: usize) -> u64 {
        self.kappa.as_ref().map_or(0, |k| k[x][y] % self.m)
    }

    /// The abelian dynamical cocycle `eta a + tau b + kappa` on `Z_m`.
    pub fn to_dynamical_cocycle(&self) -> Result<DynamicalCocycle> {
        let g = self.check_shape()?;
        let m = self.m;
        let k = m as usize;
        let gmap = (0..m).map(|a| ((g * a) % m) as usize).collect();
        Ok(DynamicalCocycle::from_fn(self.base_order, k, gmap, |x, y, a, b| {
            ((self.eta[x][y] * a as u64 + self.tau[x][y] * b as u64 + self.kappa_at(x, y)) % m) as usize
        }))
    }
}

fn module_base_check(base: &FTable, md: &ModuleData) -> Result<u64> {
    if base.order() != md.base_order {
        return Err(Error::SizeMismatch(base.order(), md.base_order));
    }
    md.check_shape()
}

/// The three module identities over every triple; with `quandle` also
/// `tau_{fx,fx} g = (eta + tau)_{fx,fx} tau_{x,x}`.
pub fn check_module(base: &FTable, md: &ModuleData, quandle: bool) -> Result<AxiomReport> {
    let g = module_base_check(base, md)?;
    let (n, m) = (base.order(), md.m);
    let f = base.derived_f();
    let (eta, tau) = (&md.eta, &md.tau);
    let mul = |a: u64, b: u64| (a % m) * (b % m) % m;
    let mut report = AxiomReport::new(if quandle { Level::Quandle } else { Level::Rack });
    let mut first = [true; 3];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (xy, xz, yz) = (base.op(x, y), base.op(x, z), base.op(y, z));
                let checks = [
                    (Condition::ModuleEta, mul(eta[xy][f[z]], eta[x][y]), mul(eta[xz][yz], eta[x][z])),
                    (Condition::ModuleMixed, mul(eta[xy][f[z]], tau[x][y]), mul(tau[xz][yz], eta[y][z])),
                    (
                        Condition::ModuleTau,
                        mul(tau[xy][f[z]], g),
                        (mul(eta[xz][yz], tau[x][z]) + mul(tau[xz][yz], tau[y][z])) % m,
                    ),
                ];
                for (i, (cond, lhs, rhs)) in checks.into_iter().enumerate() {
                    if first[i] && lhs != rhs {
                        first[i] = false;
                        report.push(cond, vec![x, y, z]);
                    }
                }
            }
        }
    }
    if quandle {
        for x in 0..n {
            let fx = f[x];
            if mul(tau[fx][fx], g) != mul(eta[fx][fx] + tau[fx][fx], tau[x][x]) {
                report.push(Condition::QuandleModule, vec![x]);
                break;
            }
        }
    }
    Ok(report)
}

/// The module identities evaluated at a triple, as `(lhs, rhs)` for each.
pub fn module_identity_values(base: &FTable, md: &ModuleData, x: usize, y: usize, z: usize) -> Result<[(u64, u64); 3]> {
    let g = module_base_check(base, md)?;
    let m = md.m;
    let f = base.derived_f();
    let (eta, tau) = (&md.eta, &md.tau);
    let (xy, xz, yz) = (base.op(x, y), base.op(x, z), base.op(y, z));
    let mul = |a: u64, b: u64| (a % m) * (b % m) % m;
    Ok([
        (mul(eta[xy][f[z]], eta[x][y]), mul(eta[xz][yz], eta[x][z])),
        (mul(eta[xy][f[z]], tau[x][y]), mul(tau[xz][yz], eta[y][z])),
        (mul(tau[xy][f[z]], g), (mul(eta[xz][yz], tau[x][z]) + mul(tau[xz][yz], tau[y][z])) % m),
    ])
}

/// Outcome of the generalized 2-cocycle check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCocycleReport {
    pub report: AxiomReport,
    /// `kappa_{z,z} = 0` for every `z`.
    pub kappa_normalized: bool,
}

/// `eta_{x*y,fz} kappa_{x,y} + kappa_{x*y,fz} =
///  eta_{x*z,y*z} kappa_{x,z} + tau_{x*z,y*z} kappa_{y,z} + kappa_{x*z,y*z}`.
pub fn check_generalized_2cocycle(base: &FTable, md: &ModuleData) -> Result<TwoCocycleReport> {
    module_base_check(base, md)?;
    let (n, m) = (base.order(), md.m);
    let f = base.derived_f();
    let (eta, tau) = (&md.eta, &md.tau);
    let kap = |x: usize, y: usize| md.kappa_at(x, y);
    let mut report = AxiomReport::new(Level::Rack);
    'triples: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (xy, xz, yz) = (base.op(x, y), base.op(x, z), base.op(y, z));
                let lhs = (eta[xy][f[z]] % m * kap(x, y) + kap(xy, f[z])) % m;
                let rhs = (eta[xz][yz] % m * kap(x, z) + tau[xz][yz] % m * kap(y, z) + kap(xz, yz)) % m;
                if lhs != rhs {
                    report.push(Condition::TwoCocycle, vec![x, y, z]);
                    break 'triples;
                }
            }
        }
    }
    let kappa_normalized = (0..n).all(|z| kap(z, z) == 0);
    Ok(TwoCocycleReport { report, kappa_normalized })
}

/// A group 2-cocycle `theta` with values in `Z_m`, `G` acting on `Z_m` by
/// the unit multipliers `action[x]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCocycleData {
    pub group: GroupTable,
    pub m: u64,
    pub action: Vec<u64>,
    pub theta: Vec<Vec<u64>>,
    /// Endomorphism of `G`.
    pub f: Vec<usize>,
    /// Endomorphism of `Z_m`.
    pub g: FiberMap,
}

/// Which printed closed forms match the numeric extraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormAgreement {
    pub eta: bool,
    pub tau: bool,
    pub kappa: bool,
    /// First `(x, y)` where kappa differs, if any.
    pub kappa_mismatch: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImportedCocycle {
    /// The base f-quandle `x * y = y^-1 x f(y)` on `G`.
    pub base: FTable,
    /// The extension `E = Z_m ×_theta G` as an f-quandle, `(a, x)` at index `x * m + a`.
    pub extension: FTable,
    pub module: ModuleData,
    /// `alpha = eta a + tau b + kappa` holds on every fiber pair.
    pub decomposition_exact: bool,
    /// `eta(a) = y^-1 a`, `tau(b) = y^-1 x g(b) - y^-1 b`,
    /// `kappa = -theta(y^-1, y) + theta(y^-1, x) + theta(y^-1 x, f(y))`.
    pub closed_form: ClosedFormAgreement,
}

fn precondition(what: &str, witness: Vec<usize>) -> Error {
    Error::Precondition { what: what.into(), witness }
}

/// Builds `E` with `(a, x)(b, y) = (a + x.b + theta(x, y), xy)`, makes it an
/// f-quandle by conjugation with `F(a, x) = (g(a), f(x))`, and reads the
/// module coefficients off the fiber component numerically.
pub fn import_group_2cocycle(d: &GroupCocycleData) -> Result<ImportedCocycle> {
    let grp = &d.group;
    let (n, m) = (grp.order(), d.m);
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let k = m as usize;
    if d.action.len() != n || d.theta.len() != n || d.theta.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("action and theta must be indexed by the {n} group elements")));
    }
    for &u in &d.action {
        require_unit(u % m, m)?;
    }
    grp.check_endomorphism(&d.f)?;
    let g = d.g.multiplier(m)?;
    let act = |x: usize, b: u64| d.action[x] % m * (b % m) % m;
    let th = |x: usize, y: usize| d.theta[x][y] % m;
    for x in 0..n {
        for y in 0..n {
            if d.action[grp.mul(x, y)] % m != act(x, d.action[y]) {
                return Err(precondition("action is a homomorphism", vec![x, y]));
            }
            for z in 0..n {
                let lhs = (th(x, y) + th(grp.mul(x, y), z)) % m;
                let rhs = (act(x, th(y, z)) + th(x, grp.mul(y, z))) % m;
                if lhs != rhs {
                    return Err(precondition("theta is a group 2-cocycle", vec![x, y, z]));
                }
            }
        }
    }

    let idx = |a: u64, x: usize| x * k + a as usize;
    let mult: Vec<Vec<usize>> = (0..n * k)
        .map(|p| {
            (0..n * k)
                .map(|q| {
                    let (x, a, y, b) = (p / k, (p % k) as u64, q / k, (q % k) as u64);
                    idx((a + act(x, b) + th(x, y)) % m, grp.mul(x, y))
                })
                .collect()
        })
        .collect();
    let e = GroupTable::from_mult(mult).map_err(|_| precondition("E is a group", vec![]))?;
    let big_f: Vec<usize> = (0..n * k).map(|p| idx(g * (p % k) as u64 % m, d.f[p / k])).collect();
    let extension = make_conjugation(&e, &big_f, ConjugationVariant::Plain).map_err(|err| match err {
        Error::NotEndomorphism { a, b } => precondition("F is an endomorphism of E", vec![a, b]),
        other => other,
    })?;
    let base = make_conjugation(grp, &d.f, ConjugationVariant::Plain)?;

    let alpha = |x: usize, y: usize, a: u64, b: u64| -> u64 {
        let r = extension.op(idx(a, x), idx(b, y));
        assert_eq!(r / k, base.op(x, y), "E projects onto the base");
        (r % k) as u64
    };
    let sub = |a: u64, b: u64| (a + m - b % m) % m;
    let mut eta = vec![vec![0; n]; n];
    let mut tau = vec![vec![0; n]; n];
    let mut kappa = vec![vec![0; n]; n];
    let mut decomposition_exact = true;
    for x in 0..n {
        for y in 0..n {
            let kap = alpha(x, y, 0, 0);
            kappa[x][y] = kap;
            eta[x][y] = if m > 1 { sub(alpha(x, y, 1, 0), kap) } else { 0 };
            tau[x][y] = if m > 1 { sub(alpha(x, y, 0, 1), kap) } else { 0 };
            for a in 0..m {
                for b in 0..m {
                    if alpha(x, y, a, b) != (eta[x][y] * a + tau[x][y] * b + kap) % m {
                        decomposition_exact = false;
                    }
                }
            }
        }
    }

    let mut agree = ClosedFormAgreement { eta: true, tau: true, kappa: true, kappa_mismatch: None };
    for x in 0..n {
        for y in 0..n {
            let yi = grp.inv(y);
            let yix = grp.mul(yi, x);
            agree.eta &= eta[x][y] == act(yi, 1);
            agree.tau &= tau[x][y] == sub(act(yix, g), act(yi, 1));
            let closed = (sub(th(yi, x), th(yi, y)) + th(yix, d.f[y])) % m;
            if closed != kappa[x][y] {
                agree.kappa = false;
                agree.kappa_mismatch.get_or_insert((x, y));
            }
        }
    }
    let module = ModuleData { base_order: n, m, eta, tau, g: FiberMap::Scalar(g), kappa: Some(kappa) };
    Ok(ImportedCocycle { base, extension, module, decomposition_exact, closed_form: agree })
}
