//! Families of quandle operations on a common carrier `X`, indexed by a
//! quandle or by a group, their associated quandles on `X x index`, and the
//! general product construction on `X x S`.
//!
//! Pairs `(x, a)` are flattened as `x * m + a` where `m` is the size of the
//! index set.

use std::fmt;

use crate::composition::{compose, QuandleGroup};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::table::{AxiomReport, OpTable};

/// The structure on the index set of a family.
#[derive(Clone, Debug)]
pub enum IndexStructure {
    /// A quandle `(Q, o)`.
    Quandle(OpTable),
    /// A group `G`, optionally with a quandle operation `Q_G` on the same
    /// carrier (needed once an index map `f` is present).
    Group {
        group: FiniteGroup,
        quandle: Option<OpTable>,
    },
}

impl IndexStructure {
    pub fn size(&self) -> usize {
        match self {
            IndexStructure::Quandle(q) => q.n(),
            IndexStructure::Group { group, .. } => group.order(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Q,
    G,
    Qf,
    Gf,
}

impl FamilyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Q => "Q-family",
            FamilyKind::G => "G-family",
            FamilyKind::Qf => "(Q,f)-family",
            FamilyKind::Gf => "(G,f)-family",
        }
    }
}

/// Operations `*_a` on `X`, one per index, with an optional index-valued
/// map `f`, stored as `f[s * m + t] = f(s, t)`.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    x_size: usize,
    index: IndexStructure,
    ops: Vec<OpTable>,
    f: Option<Vec<usize>>,
}

impl FamilySpec {
    /// Checks shapes only; the family axioms are checked by the validators.
    pub fn new(
        x_size: usize,
        index: IndexStructure,
        ops: Vec<OpTable>,
        f: Option<Vec<usize>>,
    ) -> Result<Self> {
        let m = index.size();
        if x_size == 0 {
            return Err(Error::EmptyCarrier);
        }
        if ops.len() != m {
            return Err(Error::MalformedFamily(format!(
                "{} operations for an index set of size {m}",
                ops.len()
            )));
        }
        if let Some(bad) = ops.iter().position(|t| t.n() != x_size) {
            return Err(Error::MalformedFamily(format!(
                "operation {bad} has size {}, expected {x_size}",
                ops[bad].n()
            )));
        }
        match &index {
            IndexStructure::Quandle(q) if !q.is_quandle() => {
                return Err(Error::MalformedFamily(
                    "index table is not a quandle".into(),
                ))
            }
            IndexStructure::Group {
                quandle: Some(q), ..
            } => {
                if q.n() != m {
                    return Err(Error::MalformedFamily(format!(
                        "index quandle has size {}, group has order {m}",
                        q.n()
                    )));
                }
                if !q.is_quandle() {
                    return Err(Error::MalformedFamily(
                        "index table is not a quandle".into(),
                    ));
                }
            }
            _ => {}
        }
        if let Some(f) = &f {
            if f.len() != m * m {
                return Err(Error::MalformedFamily(format!(
                    "index map has {} entries, expected {}",
                    f.len(),
                    m * m
                )));
            }
            if let Some(&v) = f.iter().find(|&&v| v >= m) {
                return Err(Error::IndexOutOfRange { index: v, n: m });
            }
        }
        Ok(FamilySpec {
            x_size,
            index,
            ops,
            f,
        })
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn index(&self) -> &IndexStructure {
        &self.index
    }

    pub fn index_size(&self) -> usize {
        self.index.size()
    }

    pub fn ops(&self) -> &[OpTable] {
        &self.ops
    }

    pub fn f(&self) -> Option<&[usize]> {
        self.f.as_deref()
    }

    pub fn kind(&self) -> FamilyKind {
        match (&self.index, self.f.is_some()) {
            (IndexStructure::Quandle(_), false) => FamilyKind::Q,
            (IndexStructure::Quandle(_), true) => FamilyKind::Qf,
            (IndexStructure::Group { .. }, false) => FamilyKind::G,
            (IndexStructure::Group { .. }, true) => FamilyKind::Gf,
        }
    }

    fn op(&self, a: usize, x: usize, y: usize) -> usize {
        self.ops[a].get(x, y)
    }

    fn fmap(&self, s: usize, t: usize) -> usize {
        self.f.as_ref().expect("f present")[s * self.index_size() + t]
    }

    fn require(&self, kind: FamilyKind) -> Result<()> {
        if self.kind() != kind {
            return Err(Error::MalformedFamily(format!(
                "expected a {}, found a {}",
                kind.as_str(),
                self.kind().as_str()
            )));
        }
        Ok(())
    }

    fn group(&self) -> &FiniteGroup {
        match &self.index {
            IndexStructure::Group { group, .. } => group,
            IndexStructure::Quandle(_) => unreachable!("checked by require"),
        }
    }

    /// The operation on the index set used by axiom 3 and the associated
    /// quandle.
    fn index_op(&self) -> Result<&OpTable> {
        match &self.index {
            IndexStructure::Quandle(q) => Ok(q),
            IndexStructure::Group {
                quandle: Some(q), ..
            } => Ok(q),
            IndexStructure::Group { quandle: None, .. } => Err(Error::MalformedFamily(
                "a quandle structure on the group is required".into(),
            )),
        }
    }
}

/// The first failing instance of a family axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyViolation {
    /// `x *_a x != x`.
    NotIdempotent { x: usize, index: usize },
    /// `y -> y *_a x` is not a bijection.
    NotBijective { x: usize, index: usize },
    /// `x *_{gh} y != (x *_g y) *_h y`.
    NotMultiplicative {
        x: usize,
        y: usize,
        g: usize,
        h: usize,
    },
    /// `x *_e y != x`.
    UnitNotTrivial { x: usize, y: usize },
    /// The distributivity axiom fails at `(x, y, z)` and the listed indices
    /// (`a, b` for Q- and G-families, `g, h, q` when `f` is present).
    NotDistributive {
        x: usize,
        y: usize,
        z: usize,
        indices: Vec<usize>,
    },
}

impl FamilyViolation {
    pub fn axiom(&self) -> u8 {
        match self {
            FamilyViolation::NotIdempotent { .. } => 1,
            FamilyViolation::NotBijective { .. }
            | FamilyViolation::NotMultiplicative { .. }
            | FamilyViolation::UnitNotTrivial { .. } => 2,
            FamilyViolation::NotDistributive { .. } => 3,
        }
    }
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyViolation::NotIdempotent { x, index } => {
                write!(f, "axiom 1: x *_{index} x != x for x = {x}")
            }
            FamilyViolation::NotBijective { x, index } => {
                write!(f, "axiom 2: y -> y *_{index} {x} is not a bijection")
            }
            FamilyViolation::NotMultiplicative { x, y, g, h } => write!(
                f,
                "axiom 2: x *_gh y != (x *_g y) *_h y at x = {x}, y = {y}, g = {g}, h = {h}"
            ),
            FamilyViolation::UnitNotTrivial { x, y } => {
                write!(f, "axiom 2: x *_e y != x at x = {x}, y = {y}")
            }
            FamilyViolation::NotDistributive { x, y, z, indices } => write!(
                f,
                "axiom 3 fails at x = {x}, y = {y}, z = {z}, indices {indices:?}"
            ),
        }
    }
}

/// `None` when the family is valid.
pub type FamilyVerdict = Option<FamilyViolation>;

fn first_non_idempotent(spec: &FamilySpec) -> Option<FamilyViolation> {
    let m = spec.index_size();
    (0..spec.x_size).find_map(|x| {
        (0..m)
            .find(|&a| spec.op(a, x, x) != x)
            .map(|index| FamilyViolation::NotIdempotent { x, index })
    })
}

fn first_non_bijective(spec: &FamilySpec) -> Option<FamilyViolation> {
    let m = spec.index_size();
    (0..spec.x_size).find_map(|x| {
        (0..m)
            .find(|&a| spec.ops[a].column(x).is_none())
            .map(|index| FamilyViolation::NotBijective { x, index })
    })
}

/// Axiom 2 for group-indexed families.
fn first_group_action_failure(spec: &FamilySpec) -> Option<FamilyViolation> {
    let group = spec.group();
    let (n, m) = (spec.x_size, group.order());
    for x in 0..n {
        for y in 0..n {
            for g in 0..m {
                for h in 0..m {
                    let lhs = spec.op(group.mul(g, h), x, y);
                    if lhs != spec.op(h, spec.op(g, x, y), y) {
                        return Some(FamilyViolation::NotMultiplicative { x, y, g, h });
                    }
                }
            }
        }
    }
    let e = group.identity();
    (0..n).find_map(|x| {
        (0..n)
            .find(|&y| spec.op(e, x, y) != x)
            .map(|y| FamilyViolation::UnitNotTrivial { x, y })
    })
}

/// Scans `(x, y, z)` then index tuples of length `arity` in lexicographic
/// order for the first failure of `holds`.
fn first_distributivity_failure(
    spec: &FamilySpec,
    arity: u32,
    holds: impl Fn(usize, usize, usize, &[usize]) -> bool,
) -> Option<FamilyViolation> {
    let (n, m) = (spec.x_size, spec.index_size());
    let tuples = m.pow(arity);
    let mut indices = vec![0; arity as usize];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for code in 0..tuples {
                    let mut rest = code;
                    for slot in indices.iter_mut().rev() {
                        *slot = rest % m;
                        rest /= m;
                    }
                    if !holds(x, y, z, &indices) {
                        return Some(FamilyViolation::NotDistributive {
                            x,
                            y,
                            z,
                            indices: indices.clone(),
                        });
                    }
                }
            }
        }
    }
    None
}

/// Axiom 3 with an index map: `(x *_{f(g,h)} y) *_{f(g*h,q)} z =
/// (x *_{f(g,q)} z) *_{f(g*q,h*q)} (y *_{f(h,q)} z)`.
fn first_f_distributivity_failure(spec: &FamilySpec, star: &OpTable) -> Option<FamilyViolation> {
    first_distributivity_failure(spec, 3, |x, y, z, idx| {
        let (g, h, q) = (idx[0], idx[1], idx[2]);
        let lhs = spec.op(
            spec.fmap(star.get(g, h), q),
            spec.op(spec.fmap(g, h), x, y),
            z,
        );
        let rhs = spec.op(
            spec.fmap(star.get(g, q), star.get(h, q)),
            spec.op(spec.fmap(g, q), x, z),
            spec.op(spec.fmap(h, q), y, z),
        );
        lhs == rhs
    })
}

pub fn validate_q_family(spec: &FamilySpec) -> Result<FamilyVerdict> {
    spec.require(FamilyKind::Q)?;
    let circ = spec.index_op()?;
    Ok(first_non_idempotent(spec)
        .or_else(|| first_non_bijective(spec))
        .or_else(|| {
            first_distributivity_failure(spec, 2, |x, y, z, idx| {
                let (a, b) = (idx[0], idx[1]);
                spec.op(b, spec.op(a, x, y), z)
                    == spec.op(circ.get(a, b), spec.op(b, x, z), spec.op(b, y, z))
            })
        }))
}

pub fn validate_g_family(spec: &FamilySpec) -> Result<FamilyVerdict> {
    spec.require(FamilyKind::G)?;
    let group = spec.group();
    Ok(first_non_idempotent(spec)
        .or_else(|| first_group_action_failure(spec))
        .or_else(|| {
            first_distributivity_failure(spec, 2, |x, y, z, idx| {
                let (g, h) = (idx[0], idx[1]);
                let conj = group.mul(group.mul(group.inv(h), g), h);
                spec.op(h, spec.op(g, x, y), z) == spec.op(conj, spec.op(h, x, z), spec.op(h, y, z))
            })
        }))
}

pub fn validate_qf_family(spec: &FamilySpec) -> Result<FamilyVerdict> {
    spec.require(FamilyKind::Qf)?;
    let star = spec.index_op()?;
    Ok(first_non_idempotent(spec)
        .or_else(|| first_non_bijective(spec))
        .or_else(|| first_f_distributivity_failure(spec, star)))
}

/// Requires the quandle `Q_G` on the group, which supplies the `*` of
/// axiom 3.
pub fn validate_gf_family(spec: &FamilySpec) -> Result<FamilyVerdict> {
    spec.require(FamilyKind::Gf)?;
    let star = spec.index_op()?;
    Ok(first_non_idempotent(spec)
        .or_else(|| first_group_action_failure(spec))
        .or_else(|| first_f_distributivity_failure(spec, star)))
}

/// Runs the validator matching the family's kind.
pub fn validate_family(spec: &FamilySpec) -> Result<FamilyVerdict> {
    match spec.kind() {
        FamilyKind::Q => validate_q_family(spec),
        FamilyKind::G => validate_g_family(spec),
        FamilyKind::Qf => validate_qf_family(spec),
        FamilyKind::Gf => validate_gf_family(spec),
    }
}

/// First `(x, y, g, h, q)` violating
/// `x *_{f(g,h) f(g*h,q)} y = x *_{f(g,q) f(g*q,h*q)} y`, where an index
/// product `uv` acts as `*_u` followed by `*_v`.
pub fn cocycle_witness(spec: &FamilySpec) -> Result<Option<[usize; 5]>> {
    spec.require(FamilyKind::Gf)?;
    let star = spec.index_op()?;
    let m = spec.index_size();
    let mut products = std::collections::HashMap::new();
    let mut product = |u: usize, v: usize| -> OpTable {
        products
            .entry((u, v))
            .or_insert_with(|| compose(&spec.ops[u], &spec.ops[v]).expect("same carrier"))
            .clone()
    };
    for g in 0..m {
        for h in 0..m {
            for q in 0..m {
                let lhs = product(spec.fmap(g, h), spec.fmap(star.get(g, h), q));
                let rhs = product(spec.fmap(g, q), spec.fmap(star.get(g, q), star.get(h, q)));
                if lhs != rhs {
                    let (x, y) = first_difference(&lhs, &rhs);
                    return Ok(Some([x, y, g, h, q]));
                }
            }
        }
    }
    Ok(None)
}

fn first_difference(a: &OpTable, b: &OpTable) -> (usize, usize) {
    let n = a.n();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| a.get(x, y) != b.get(x, y))
        .expect("tables differ")
}

/// The counterexample tuple is reported in the order
/// `(x, y, g, h, q)`, lexicographic in `(g, h, q)` first.
pub fn cocycle_check(spec: &FamilySpec) -> Result<bool> {
    Ok(cocycle_witness(spec)?.is_none())
}

/// The quandle on `X x index` defined by a valid family:
///
/// - Q-family: `(x, a) . (y, b) = (x *_b y, a o b)`,
/// - G-family: `(x, g) . (y, h) = (x *_h y, h^-1 g h)`,
/// - with `f`: `(x, s) . (y, t) = (x *_{f(s,t)} y, s * t)`.
pub fn associated_quandle(spec: &FamilySpec) -> Result<OpTable> {
    if let Some(violation) = validate_family(spec)? {
        return Err(Error::InvalidFamily(violation.to_string()));
    }
    let m = spec.index_size();
    let second: Box<dyn Fn(usize, usize) -> usize + '_> = match spec.kind() {
        FamilyKind::G => {
            let group = spec.group();
            Box::new(move |g, h| group.mul(group.mul(group.inv(h), g), h))
        }
        _ => {
            let star = spec.index_op()?;
            Box::new(move |s, t| star.get(s, t))
        }
    };
    let first = |s: usize, t: usize| if spec.f.is_some() { spec.fmap(s, t) } else { t };
    OpTable::from_fn(spec.x_size * m, |p, r| {
        let (x, s) = (p / m, p % m);
        let (y, t) = (r / m, r % m);
        spec.op(first(s, t), x, y) * m + second(s, t)
    })
}

impl QuandleGroup {
    /// The group of operations as a `(G, f)`-family over itself: `Q_G` is
    /// trivial and `f(g, h) = h`. Valid whenever the operations pairwise
    /// distribute over each other.
    pub fn as_family(&self) -> Result<FamilySpec> {
        let group = self.to_finite_group()?;
        let m = group.order();
        let f = (0..m).flat_map(|_| 0..m).collect();
        FamilySpec::new(
            self.elements()[0].n(),
            IndexStructure::Group {
                group,
                quandle: Some(OpTable::trivial(m)?),
            },
            self.elements().to_vec(),
            Some(f),
        )
    }
}

/// A failing condition of the product construction on `X x S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProductViolation {
    /// `f_{s,s}(x, x) != x` or `g_{x,x}(s, s) != s`.
    NotIdempotent { x: usize, s: usize },
    /// Right multiplication by `(y, t)` is not a bijection.
    NotBijective { y: usize, t: usize },
    /// The first-coordinate equation fails at `(x, y, z, s, t, u)`.
    FirstCoordinate([usize; 6]),
    /// The second-coordinate equation fails at `(x, y, z, s, t, u)`.
    SecondCoordinate([usize; 6]),
}

impl ProductViolation {
    pub fn condition(&self) -> u8 {
        match self {
            ProductViolation::NotIdempotent { .. } => 1,
            ProductViolation::NotBijective { .. } => 2,
            _ => 3,
        }
    }
}

/// Both verdicts of [`general_product_check`].
#[derive(Clone, Debug)]
pub struct ProductReport {
    /// The three conditions evaluated from `f` and `g` directly.
    pub conditions_hold: bool,
    pub violation: Option<ProductViolation>,
    /// Axiom check of the materialised product table.
    pub direct: AxiomReport,
    pub table: OpTable,
}

/// The operation `(x, s) . (y, t) = (f_{s,t}(x, y), g_{x,y}(s, t))` on
/// `X x S`, with `f[s * |S| + t]` a table on `X` and `g[x * |X| + y]` a
/// table on `S`.
pub fn general_product_check(
    x_size: usize,
    s_size: usize,
    f: &[OpTable],
    g: &[OpTable],
) -> Result<ProductReport> {
    if x_size == 0 || s_size == 0 {
        return Err(Error::EmptyCarrier);
    }
    let expect = |expected: usize, found: usize| {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    };
    expect(s_size * s_size, f.len())?;
    expect(x_size * x_size, g.len())?;
    for t in f {
        expect(x_size, t.n())?;
    }
    for t in g {
        expect(s_size, t.n())?;
    }
    let (nx, ns) = (x_size, s_size);
    let fv = |s: usize, t: usize, x: usize, y: usize| f[s * ns + t].get(x, y);
    let gv = |x: usize, y: usize, s: usize, t: usize| g[x * nx + y].get(s, t);
    let table = OpTable::from_fn(nx * ns, |p, r| {
        let (x, s) = (p / ns, p % ns);
        let (y, t) = (r / ns, r % ns);
        fv(s, t, x, y) * ns + gv(x, y, s, t)
    })?;

    let idempotence = || {
        (0..nx).find_map(|x| {
            (0..ns)
                .find(|&s| fv(s, s, x, x) != x || gv(x, x, s, s) != s)
                .map(|s| ProductViolation::NotIdempotent { x, s })
        })
    };
    let bijectivity = || {
        (0..nx).find_map(|y| {
            (0..ns).find_map(|t| {
                let mut seen = vec![false; nx * ns];
                for x in 0..nx {
                    for s in 0..ns {
                        let image = fv(s, t, x, y) * ns + gv(x, y, s, t);
                        if std::mem::replace(&mut seen[image], true) {
                            return Some(ProductViolation::NotBijective { y, t });
                        }
                    }
                }
                None
            })
        })
    };
    let distributivity = || {
        for x in 0..nx {
            for y in 0..nx {
                for z in 0..nx {
                    for s in 0..ns {
                        for t in 0..ns {
                            for u in 0..ns {
                                let tuple = [x, y, z, s, t, u];
                                let (xz, yz) = (fv(s, u, x, z), fv(t, u, y, z));
                                let (su, tu) = (gv(x, z, s, u), gv(y, z, t, u));
                                let (xy, st) = (fv(s, t, x, y), gv(x, y, s, t));
                                if fv(st, u, xy, z) != fv(su, tu, xz, yz) {
                                    return Some(ProductViolation::FirstCoordinate(tuple));
                                }
                                if gv(xy, z, st, u) != gv(xz, yz, su, tu) {
                                    return Some(ProductViolation::SecondCoordinate(tuple));
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    };
    let violation = idempotence().or_else(bijectivity).or_else(distributivity);
    Ok(ProductReport {
        conditions_hold: violation.is_none(),
        violation,
        direct: table.axioms_report(),
        table,
    })
}
