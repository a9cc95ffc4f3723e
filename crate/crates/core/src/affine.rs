//! Discrete groups of affine maps `z -> a z + b` of the complex line, with
//! exact lattice arithmetic.
//!
//! Translations live in a lattice given by integer coordinates in a fixed
//! basis; rotations act on those coordinates through integer matrices.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_integer::{gcd, lcm};
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::signature::{format_orders, Order, OrderSet};

/// Largest denominator used when scanning for torsion points. Fixed points of
/// a rotation of order `d` have denominators dividing `det(I - M)`, which is
/// at most 4, so 12 covers every case.
pub const TORSION_DENOMINATOR: i64 = 12;

type Mat = [[i64; 2]; 2];
type Vec2 = [i64; 2];
pub type Point = [Ratio<i64>; 2];

const IDENTITY: Mat = [[1, 0], [0, 1]];

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn mat_pow(m: &Mat, e: u32) -> Mat {
    (0..e).fold(IDENTITY, |acc, _| mat_mul(&acc, m))
}

fn mat_vec(m: &Mat, v: &Vec2) -> Vec2 {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

/// `exp(2 pi i exp / order)`, kept with `gcd(exp, order) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootOfUnity {
    pub order: u32,
    pub exp: u32,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { order: 1, exp: 0 };

    pub fn new(order: u32, exp: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::usage("root of unity of order 0"));
        }
        let exp = exp % order;
        let g = gcd(exp, order);
        Ok(if exp == 0 { Self::ONE } else { RootOfUnity { order: order / g, exp: exp / g } })
    }

    pub fn primitive(order: u32) -> Result<Self> {
        Self::new(order, 1)
    }

    pub fn inverse(self) -> RootOfUnity {
        RootOfUnity::new(self.order, self.order - self.exp).expect("nonzero order")
    }

    pub fn is_one(self) -> bool {
        self.order == 1
    }
}

impl std::ops::Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, other: RootOfUnity) -> RootOfUnity {
        let l = lcm(self.order, other.order);
        let e = (self.exp * (l / self.order) + other.exp * (l / other.order)) % l;
        RootOfUnity::new(l, e).expect("nonzero order")
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.exp) {
            (1, _) => write!(f, "1"),
            (2, _) => write!(f, "-1"),
            (k, 1) => write!(f, "zeta{k}"),
            (k, e) => write!(f, "zeta{k}^{e}"),
        }
    }
}

/// The translation lattice and the rotations that preserve it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LatticeRing {
    /// No translations.
    None,
    /// The integers, rank 1.
    Z,
    /// Gaussian integers in the basis `1, i`.
    Gauss,
    /// Eisenstein integers in the basis `1, tau6`.
    Eisenstein,
    /// `Z + cZ` for a formal non-real `c`.
    General,
}

impl LatticeRing {
    pub fn rank(self) -> usize {
        match self {
            LatticeRing::None => 0,
            LatticeRing::Z => 1,
            _ => 2,
        }
    }

    /// Order of the full rotation group preserving the lattice; `None` for the
    /// rank 0 case where every rotation is allowed.
    pub fn max_rotation_order(self) -> Option<u32> {
        match self {
            LatticeRing::None => None,
            LatticeRing::Z | LatticeRing::General => Some(2),
            LatticeRing::Gauss => Some(4),
            LatticeRing::Eisenstein => Some(6),
        }
    }

    fn generator_matrix(self) -> Mat {
        match self {
            LatticeRing::None => IDENTITY,
            LatticeRing::Z | LatticeRing::General => [[-1, 0], [0, -1]],
            LatticeRing::Gauss => [[0, -1], [1, 0]],
            LatticeRing::Eisenstein => [[0, -1], [1, 1]],
        }
    }

    /// Integer matrix of multiplication by `a` on basis coordinates.
    pub fn rotation_action(self, a: RootOfUnity) -> Result<[[i64; 2]; 2]> {
        match self.max_rotation_order() {
            None => Ok(IDENTITY),
            Some(k) if k % a.order == 0 => Ok(mat_pow(&self.generator_matrix(), a.exp * (k / a.order))),
            Some(_) => Err(Error::usage(format!("{a} does not preserve the {self:?} lattice"))),
        }
    }

    /// Basis translations of the lattice.
    pub fn basis(self) -> Vec<[i64; 2]> {
        match self.rank() {
            0 => vec![],
            1 => vec![[1, 0]],
            _ => vec![[1, 0], [0, 1]],
        }
    }
}

/// `z -> a z + b` with `b` in lattice coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineMap {
    pub a: RootOfUnity,
    pub b: [i64; 2],
    pub ring: LatticeRing,
}

impl AffineMap {
    pub fn identity(ring: LatticeRing) -> Self {
        AffineMap { a: RootOfUnity::ONE, b: [0, 0], ring }
    }

    pub fn translation(ring: LatticeRing, b: [i64; 2]) -> Self {
        AffineMap { a: RootOfUnity::ONE, b, ring }
    }

    pub fn rotation(ring: LatticeRing, a: RootOfUnity) -> Self {
        AffineMap { a, b: [0, 0], ring }
    }

    pub fn is_translation(&self) -> bool {
        self.a.is_one()
    }

    /// `self o other`, i.e. apply `other` first.
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap> {
        if self.ring != other.ring {
            return Err(Error::usage("composition of maps over different lattices"));
        }
        let m = self.ring.rotation_action(self.a)?;
        let ab = mat_vec(&m, &other.b);
        Ok(AffineMap { a: self.a * other.a, b: [ab[0] + self.b[0], ab[1] + self.b[1]], ring: self.ring })
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let ai = self.a.inverse();
        let m = self.ring.rotation_action(ai)?;
        let v = mat_vec(&m, &self.b);
        Ok(AffineMap { a: ai, b: [-v[0], -v[1]], ring: self.ring })
    }

    /// Image of a point given in lattice coordinates.
    pub fn apply(&self, x: &Point) -> Result<Point> {
        let m = self.ring.rotation_action(self.a)?;
        Ok([
            Ratio::from(m[0][0]) * x[0] + Ratio::from(m[0][1]) * x[1] + Ratio::from(self.b[0]),
            Ratio::from(m[1][0]) * x[0] + Ratio::from(m[1][1]) * x[1] + Ratio::from(self.b[1]),
        ])
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ring.rank() {
            0 => write!(f, "{}*z", self.a),
            1 => write!(f, "{}*z + {}", self.a, self.b[0]),
            _ => write!(f, "{}*z + ({},{})", self.a, self.b[0], self.b[1]),
        }
    }
}

/// Whether the lambda parameter of type 5 is real.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LambdaMarker {
    Real,
    NonReal,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GroupParams {
    pub k: Option<u32>,
    pub lambda: Option<LambdaMarker>,
    pub ring: Option<LatticeRing>,
}

/// One of the eight types: `a` ranges over the `k`-th roots of unity and `b`
/// over the lattice of `ring`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineGroupSpec {
    pub type_id: u8,
    pub k: u32,
    pub ring: LatticeRing,
    pub lambda: Option<LambdaMarker>,
    pub generators: Vec<AffineMap>,
}

pub fn group_spec(type_id: u8, params: GroupParams) -> Result<AffineGroupSpec> {
    use LatticeRing::*;
    let (k, default_ring) = match type_id {
        1 => {
            let k = params.k.ok_or_else(|| Error::usage("type 1 needs k"))?;
            if k < 2 {
                return Err(Error::usage("type 1 needs k >= 2"));
            }
            (k, None)
        }
        2 => (1, Z),
        3 => (2, Z),
        4 => (1, General),
        5 => {
            if params.lambda.is_none() {
                return Err(Error::usage("type 5 needs a lambda marker (real or non-real)"));
            }
            (2, General)
        }
        6 => (4, Gauss),
        7 => (3, Eisenstein),
        8 => (6, Eisenstein),
        t => return Err(Error::usage(format!("unknown affine group type {t}"))),
    };
    let ring = params.ring.unwrap_or(default_ring);
    if ring.rank() != default_ring.rank() {
        return Err(Error::usage(format!("type {type_id} needs a rank {} lattice", default_ring.rank())));
    }
    let a = RootOfUnity::primitive(k)?;
    let m = ring.rotation_action(a)?;
    // a must be an automorphism of the lattice of exactly its order
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if ring.rank() == 2 && (det.abs() != 1 || mat_pow(&m, k) != IDENTITY) {
        return Err(Error::Consistency(format!("rotation action of order {k} is not a lattice automorphism")));
    }
    let mut generators: Vec<AffineMap> = ring.basis().into_iter().map(|b| AffineMap::translation(ring, b)).collect();
    if k > 1 {
        generators.push(AffineMap::rotation(ring, a));
    }
    Ok(AffineGroupSpec { type_id, k, ring, lambda: if type_id == 5 { params.lambda } else { Option::None }, generators })
}

impl AffineGroupSpec {
    /// Rotation parts of all group elements: the closure of the generators'
    /// rotation parts.
    pub fn rotations(&self) -> Vec<RootOfUnity> {
        let mut seen: BTreeSet<RootOfUnity> = BTreeSet::from([RootOfUnity::ONE]);
        let mut frontier = vec![RootOfUnity::ONE];
        while let Some(x) = frontier.pop() {
            for g in &self.generators {
                let y = x * g.a;
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn note(&self) -> Option<&'static str> {
        match self.type_id {
            1 => Some("fixed point of order k and one end; only equal pairs (k,k) are order sets of the sphere"),
            5 => Some(match self.lambda {
                Some(LambdaMarker::Real) => "branch points on a circle; quotient map is an elliptic Schwarz-Christoffel integral onto a rectangle",
                _ => "branch points not on a circle; general period lattice",
            }),
            _ => None,
        }
    }
}

fn is_integral(x: &Ratio<i64>) -> bool {
    x.is_integer()
}

/// Number of group elements fixing `x`. An element `(a, b)` fixes `x` iff
/// `b = x - a x`, so each rotation contributes at most one element and the
/// translation part is bounded by the fundamental domain.
pub fn stabilizer_order(spec: &AffineGroupSpec, x: &Point) -> Result<u32> {
    if spec.ring.rank() == 0 {
        let zero = x[0] == Ratio::from(0) && x[1] == Ratio::from(0);
        return Ok(if zero { spec.k } else { 1 });
    }
    let mut count = 0;
    for a in spec.rotations() {
        let m = spec.ring.rotation_action(a)?;
        let ax = [
            Ratio::from(m[0][0]) * x[0] + Ratio::from(m[0][1]) * x[1],
            Ratio::from(m[1][0]) * x[0] + Ratio::from(m[1][1]) * x[1],
        ];
        let d = [x[0] - ax[0], x[1] - ax[1]];
        if d.iter().take(spec.ring.rank()).all(is_integral) && (spec.ring.rank() == 2 || d[1] == Ratio::from(0)) {
            count += 1;
        }
    }
    Ok(count)
}

/// An orbit of points with nontrivial stabilizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionClass {
    pub order: u32,
    /// Least representative in `[0,1)^rank`, as `"p/q"` strings.
    pub representative: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuotientSignature {
    Orders { orders: Vec<Order>, classes: Vec<TorsionClass> },
    GenusOne,
}

impl QuotientSignature {
    pub fn orders(&self) -> Option<&[Order]> {
        match self {
            QuotientSignature::Orders { orders, .. } => Some(orders),
            QuotientSignature::GenusOne => None,
        }
    }

    /// The orders as a validated order set, when they form one.
    pub fn order_set(&self) -> Option<OrderSet> {
        self.orders().and_then(|o| OrderSet::new(o.to_vec()).ok())
    }
}

impl fmt::Display for QuotientSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientSignature::Orders { orders, .. } => write!(f, "{}", format_orders(orders)),
            QuotientSignature::GenusOne => write!(f, "genus one"),
        }
    }
}

fn reduce_mod_one(x: Ratio<i64>) -> Ratio<i64> {
    x - x.floor()
}

/// Orders of the quotient orbifold, found by scanning rational points of the
/// fundamental domain for nontrivial stabilizers and grouping them into
/// orbits. Ends of the quotient contribute infinite orders. Listed from the
/// largest order down, infinite last.
pub fn quotient_signature(spec: &AffineGroupSpec) -> Result<QuotientSignature> {
    let rank = spec.ring.rank();
    if rank == 2 && spec.k == 1 {
        return Ok(QuotientSignature::GenusOne);
    }
    let zero = Ratio::from(0);
    let grid: Vec<Point> = match rank {
        0 => vec![[zero, zero]],
        1 => (0..TORSION_DENOMINATOR).map(|i| [Ratio::new(i, TORSION_DENOMINATOR), zero]).collect(),
        _ => (0..TORSION_DENOMINATOR)
            .flat_map(|i| (0..TORSION_DENOMINATOR).map(move |j| [Ratio::new(i, TORSION_DENOMINATOR), Ratio::new(j, TORSION_DENOMINATOR)]))
            .collect(),
    };
    let rotations: Vec<AffineMap> = spec.rotations().into_iter().map(|a| AffineMap::rotation(spec.ring, a)).collect();
    let mut done: HashSet<Point> = HashSet::new();
    let mut classes = Vec::new();
    for x in grid {
        if done.contains(&x) {
            continue;
        }
        let s = stabilizer_order(spec, &x)?;
        // modulo translations the orbit is the set of rotated images
        let mut orbit = Vec::new();
        for r in &rotations {
            let mut y = r.apply(&x)?;
            for c in y.iter_mut().take(rank) {
                *c = reduce_mod_one(*c);
            }
            orbit.push(y);
        }
        orbit.sort();
        orbit.dedup();
        if s > 1 {
            classes.push(TorsionClass {
                order: s,
                representative: orbit[0][..rank.max(1)].iter().map(|c| c.to_string()).collect(),
            });
        }
        done.extend(orbit);
    }
    let ends = match rank {
        0 => 1,
        1 if spec.k == 1 => 2,
        1 => 1,
        _ => 0,
    };
    let mut orders: Vec<Order> = classes.iter().map(|c| Order::Finite(c.order)).collect();
    orders.sort_by(|a, b| b.cmp(a));
    orders.extend(std::iter::repeat_n(Order::Inf, ends));
    classes.sort_by(|a, b| b.order.cmp(&a.order).then(a.representative.cmp(&b.representative)));
    Ok(QuotientSignature::Orders { orders, classes })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonodromyStructure {
    pub translation_subgroup_rank: usize,
    pub cyclic_quotient_order: u32,
    /// Conjugating each basis translation by each generator gives a
    /// translation.
    pub translations_normal: bool,
    /// Abelian translation subgroup with cyclic quotient.
    pub solvable: bool,
}

pub fn monodromy_structure(spec: &AffineGroupSpec) -> Result<MonodromyStructure> {
    let mut normal = true;
    for g in &spec.generators {
        let gi = g.inverse()?;
        for b in spec.ring.basis() {
            let t = AffineMap::translation(spec.ring, b);
            let c = g.compose(&t)?.compose(&gi)?;
            normal &= c.is_translation();
        }
    }
    let quotient = spec.rotations().len() as u32;
    // rotation parts form a subgroup of the roots of unity, hence cyclic
    Ok(MonodromyStructure {
        translation_subgroup_rank: spec.ring.rank(),
        cyclic_quotient_order: quotient,
        translations_normal: normal,
        solvable: normal,
    })
}
