//! Order sets, signatures and the elliptic / parabolic / hyperbolic trichotomy.
//!
//! An order set is the multiset of local monodromy orders of a covering of the
//! sphere: finite orders `r >= 2` at branch points and [`Order::Inf`] at
//! exceptional points. Its characteristic `chi = sum(1 - 1/r)` (with `Inf`
//! contributing exactly 1) decides the geometry of the universal covering:
//! sphere (`chi < 2`), plane (`chi = 2`) or disc (`chi > 2`).
//!
//! All arithmetic here is exact.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A local monodromy order: finite, or infinite at an exceptional point.
///
/// The derived ordering puts every finite order before `Inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "OrderRepr", try_from = "OrderRepr")]
pub enum Order {
    Finite(u32),
    Inf,
}

impl Order {
    pub fn is_inf(self) -> bool {
        matches!(self, Order::Inf)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(r) => Some(r),
            Order::Inf => None,
        }
    }

    /// The term `1 - 1/r` of the characteristic; `Inf` contributes 1.
    pub fn defect(self) -> Ratio<i64> {
        match self {
            Order::Finite(r) => Ratio::one() - Ratio::new(1, i64::from(r)),
            Order::Inf => Ratio::one(),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(r) => write!(f, "{r}"),
            Order::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for Order {
    type Err = Error;

    /// Accepts a decimal integer or one of `inf`, `infinity`, `oo`, `∞`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "oo" | "∞" => return Ok(Order::Inf),
            _ => {}
        }
        t.parse::<u32>()
            .map(Order::Finite)
            .map_err(|_| Error::usage(format!("cannot parse order {s:?}")))
    }
}

/// Serialized form: a bare integer, or the string `"inf"`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum OrderRepr {
    Finite(u32),
    Named(String),
}

impl From<Order> for OrderRepr {
    fn from(o: Order) -> Self {
        match o {
            Order::Finite(r) => OrderRepr::Finite(r),
            Order::Inf => OrderRepr::Named("inf".into()),
        }
    }
}

impl TryFrom<OrderRepr> for Order {
    type Error = Error;
    fn try_from(r: OrderRepr) -> Result<Self> {
        match r {
            OrderRepr::Finite(r) => Ok(Order::Finite(r)),
            OrderRepr::Named(s) => s.parse(),
        }
    }
}

/// Formats a slice of orders as `(2,3,inf)`.
pub fn format_orders(orders: &[Order]) -> String {
    let inner: Vec<String> = orders.iter().map(|o| o.to_string()).collect();
    format!("({})", inner.join(","))
}

/// `sum(1 - 1/r)` over an arbitrary list of orders, without validation.
pub fn characteristic_of(orders: &[Order]) -> Ratio<i64> {
    orders.iter().map(|o| o.defect()).fold(Ratio::zero(), |a, b| a + b)
}

/// A constraint an order set or signature fails to meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// Fewer than two points in `A ∪ B`.
    TooFewPoints { count: usize },
    /// A finite order below 2.
    OrderBelowTwo { order: u32 },
    /// Two finite orders `(k, n)` with `k != n`.
    UnequalFinitePair { first: u32, second: u32 },
    /// A two-point set mixing a finite order with `Inf`.
    MixedPair { finite: u32 },
    /// `|A|` differs from the number of finite orders.
    BranchPointCount { labels: usize, orders: usize },
    /// `|B|` differs from the number of infinite orders.
    ExceptionalPointCount { labels: usize, orders: usize },
    /// A finite order is aligned with a point of `B` or vice versa.
    Misaligned { position: usize },
    DuplicateLabel { label: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewPoints { count } => {
                write!(f, "n+k≥2 violated: only {count} point(s)")
            }
            Violation::OrderBelowTwo { order } => {
                write!(f, "finite orders must be at least 2, got {order}")
            }
            Violation::UnequalFinitePair { first, second } => {
                write!(f, "two finite orders must be equal, got ({first},{second})")
            }
            Violation::MixedPair { finite } => {
                write!(f, "a two-point set must be (k,k) or (inf,inf), got ({finite},inf)")
            }
            Violation::BranchPointCount { labels, orders } => {
                write!(f, "|A| = {labels} but there are {orders} finite orders")
            }
            Violation::ExceptionalPointCount { labels, orders } => {
                write!(f, "|B| = {labels} but there are {orders} infinite orders")
            }
            Violation::Misaligned { position } => {
                write!(f, "order at position {position} does not match its point kind")
            }
            Violation::DuplicateLabel { label } => write!(f, "duplicate point label {label:?}"),
        }
    }
}

fn order_violations(orders: &[Order]) -> Vec<Violation> {
    let mut out = Vec::new();
    if orders.len() < 2 {
        out.push(Violation::TooFewPoints { count: orders.len() });
    }
    for o in orders {
        if let Order::Finite(r) = *o {
            if r < 2 {
                out.push(Violation::OrderBelowTwo { order: r });
            }
        }
    }
    if orders.len() == 2 {
        match (orders[0], orders[1]) {
            (Order::Finite(a), Order::Finite(b)) if a != b => {
                out.push(Violation::UnequalFinitePair { first: a, second: b });
            }
            (Order::Finite(a), Order::Inf) | (Order::Inf, Order::Finite(a)) => {
                out.push(Violation::MixedPair { finite: a });
            }
            _ => {}
        }
    }
    out
}

/// A validated multiset of orders, stored non-decreasing with `Inf` last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrderSet {
    orders: Vec<Order>,
}

impl OrderSet {
    pub fn new(mut orders: Vec<Order>) -> Result<Self> {
        let v = order_violations(&orders);
        if !v.is_empty() {
            return Err(Error::Validation(v));
        }
        orders.sort();
        Ok(OrderSet { orders })
    }

    /// Convenience constructor for all-finite sets.
    pub fn finite(orders: &[u32]) -> Result<Self> {
        Self::new(orders.iter().map(|&r| Order::Finite(r)).collect())
    }

    /// Parses a comma-separated list such as `2,3,inf`.
    pub fn parse(s: &str) -> Result<Self> {
        let orders = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Order>>>()?;
        Self::new(orders)
    }

    pub fn orders(&self) -> &[Order] {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn finite_count(&self) -> usize {
        self.orders.iter().filter(|o| !o.is_inf()).count()
    }

    pub fn inf_count(&self) -> usize {
        self.orders.iter().filter(|o| o.is_inf()).count()
    }

    pub fn characteristic(&self) -> Characteristic {
        Characteristic(characteristic_of(&self.orders))
    }

    pub fn classify(&self) -> SignatureClass {
        let chi = self.characteristic().0;
        let two = Ratio::from_integer(2);
        let kind = if chi < two {
            SignatureKind::Elliptic
        } else if chi == two {
            SignatureKind::Parabolic
        } else {
            SignatureKind::Hyperbolic
        };
        let family = match kind {
            SignatureKind::Elliptic => Some(elliptic_family(&self.orders)),
            SignatureKind::Parabolic => Some(parabolic_family(&self.orders)),
            SignatureKind::Hyperbolic => None,
        };
        SignatureClass { kind, family }
    }

    /// Order of the deck group of the universal covering: `2 / (2 - chi)`
    /// for elliptic sets (Riemann–Hurwitz), infinite otherwise.
    pub fn expected_group_order(&self) -> Result<GroupOrder> {
        let chi = self.characteristic().0;
        let two = Ratio::from_integer(2);
        if chi >= two {
            return Ok(GroupOrder::Infinite);
        }
        let n = two / (two - chi);
        if !n.is_integer() || *n.numer() <= 0 {
            return Err(Error::Consistency(format!(
                "2/(2-chi) = {n} is not a positive integer for {self}"
            )));
        }
        Ok(GroupOrder::Finite(*n.numer() as u64))
    }
}

impl fmt::Display for OrderSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_orders(&self.orders))
    }
}

impl FromStr for OrderSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OrderSet::parse(s)
    }
}

/// Exact value of `chi(R)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Characteristic(pub Ratio<i64>);

impl Characteristic {
    pub fn value(&self) -> Ratio<i64> {
        self.0
    }
}

impl fmt::Display for Characteristic {
    /// `59/30`, or a bare integer such as `2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignatureKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for SignatureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignatureKind::Elliptic => "elliptic",
            SignatureKind::Parabolic => "parabolic",
            SignatureKind::Hyperbolic => "hyperbolic",
        })
    }
}

/// Named elliptic and parabolic order sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `(k,k)`
    Polygon(u32),
    /// `(2,2,k)`
    Dihedron(u32),
    /// `(2,3,3)`
    Tetrahedron,
    /// `(2,3,4)`
    Octahedron,
    /// `(2,3,5)`
    Icosahedron,
    /// `(inf,inf)`
    Strip,
    /// `(2,2,inf)`
    HalfStrip,
    /// `(2,4,4)`
    HalfSquare,
    /// `(3,3,3)`
    RegularTriangle,
    /// `(2,3,6)`
    HalfRegularTriangle,
    /// `(2,2,2,2)`
    Rectangle,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Polygon(k) => write!(f, "{k}-gon"),
            Family::Dihedron(k) => write!(f, "dihedron D_{k}"),
            Family::Tetrahedron => f.write_str("tetrahedron"),
            Family::Octahedron => f.write_str("cube/octahedron"),
            Family::Icosahedron => f.write_str("icosahedron/dodecahedron"),
            Family::Strip => f.write_str("strip"),
            Family::HalfStrip => f.write_str("half-strip"),
            Family::HalfSquare => f.write_str("half of a square"),
            Family::RegularTriangle => f.write_str("regular triangle"),
            Family::HalfRegularTriangle => f.write_str("half of a regular triangle"),
            Family::Rectangle => f.write_str("rectangle"),
        }
    }
}

impl Serialize for Family {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Kind plus canonical family name; `family` is set iff the kind is not
/// hyperbolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignatureClass {
    pub kind: SignatureKind,
    pub family: Option<Family>,
}

impl fmt::Display for SignatureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Some(fam) => write!(f, "{}({})", self.kind, fam),
            None => write!(f, "{}", self.kind),
        }
    }
}

use Order::{Finite as F, Inf};

fn elliptic_family(orders: &[Order]) -> Family {
    match *orders {
        [F(a), F(b)] if a == b => Family::Polygon(a),
        [F(2), F(2), F(k)] => Family::Dihedron(k),
        [F(2), F(3), F(3)] => Family::Tetrahedron,
        [F(2), F(3), F(4)] => Family::Octahedron,
        [F(2), F(3), F(5)] => Family::Icosahedron,
        _ => unreachable!("elliptic order set {} outside the five families", format_orders(orders)),
    }
}

fn parabolic_family(orders: &[Order]) -> Family {
    match *orders {
        [Inf, Inf] => Family::Strip,
        [F(2), F(2), Inf] => Family::HalfStrip,
        [F(2), F(4), F(4)] => Family::HalfSquare,
        [F(3), F(3), F(3)] => Family::RegularTriangle,
        [F(2), F(3), F(6)] => Family::HalfRegularTriangle,
        [F(2), F(2), F(2), F(2)] => Family::Rectangle,
        _ => unreachable!("parabolic order set {} outside the six sets", format_orders(orders)),
    }
}

/// Order of a group that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupOrder {
    Finite(u64),
    Infinite,
}

impl GroupOrder {
    pub fn finite(self) -> Option<u64> {
        match self {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::Infinite => None,
        }
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for GroupOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GroupOrder::Finite(n) => s.serialize_u64(*n),
            GroupOrder::Infinite => s.serialize_str("inf"),
        }
    }
}

/// The five elliptic families, with `k` running over `2..=max_param` for the
/// polygon and dihedron families.
pub fn enumerate_elliptic(max_param: u32) -> Vec<OrderSet> {
    let mut out: Vec<OrderSet> = (2..=max_param)
        .map(|k| OrderSet::finite(&[k, k]).expect("valid"))
        .collect();
    out.extend((2..=max_param).map(|k| OrderSet::finite(&[2, 2, k]).expect("valid")));
    for s in [[2, 3, 3], [2, 3, 4], [2, 3, 5]] {
        out.push(OrderSet::finite(&s).expect("valid"));
    }
    out
}

/// The six parabolic order sets.
pub fn enumerate_parabolic() -> Vec<OrderSet> {
    [
        vec![Inf, Inf],
        vec![F(2), F(2), Inf],
        vec![F(2), F(4), F(4)],
        vec![F(3), F(3), F(3)],
        vec![F(2), F(3), F(6)],
        vec![F(2), F(2), F(2), F(2)],
    ]
    .into_iter()
    .map(|v| OrderSet::new(v).expect("valid"))
    .collect()
}

/// Every valid order set of size `2..=max_size` with finite entries in
/// `2..=max_finite`, plus `Inf` entries when `with_inf` is set.
///
/// This is the brute-force side of the completeness checks for
/// [`enumerate_elliptic`] and [`enumerate_parabolic`].
pub fn scan_order_sets(max_finite: u32, max_size: usize, with_inf: bool) -> Vec<OrderSet> {
    let mut alphabet: Vec<Order> = (2..=max_finite).map(Order::Finite).collect();
    if with_inf {
        alphabet.push(Order::Inf);
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(max_size);
    fn rec(
        alphabet: &[Order],
        start: usize,
        max_size: usize,
        cur: &mut Vec<Order>,
        out: &mut Vec<OrderSet>,
    ) {
        if cur.len() >= 2 {
            if let Ok(s) = OrderSet::new(cur.clone()) {
                out.push(s);
            }
        }
        if cur.len() == max_size {
            return;
        }
        for i in start..alphabet.len() {
            cur.push(alphabet[i]);
            rec(alphabet, i, max_size, cur, out);
            cur.pop();
        }
    }
    rec(&alphabet, 0, max_size, &mut cur, &mut out);
    out
}

/// A signature `(A, B, R)`: labelled branch points, labelled exceptional
/// points and the aligned orders (those of `A` first, then those of `B`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub branch_points: Vec<String>,
    pub exceptional_points: Vec<String>,
    pub orders: Vec<Order>,
}

impl Signature {
    /// Canonical order set, if the signature is valid.
    pub fn order_set(&self) -> Result<OrderSet> {
        validate_signature(self).map_err(Error::Validation)?;
        OrderSet::new(self.orders.clone())
    }
}

/// Collects every violated constraint of a signature.
pub fn validate_signature(sig: &Signature) -> std::result::Result<(), Vec<Violation>> {
    let mut out = order_violations(&sig.orders);
    let finite = sig.orders.iter().filter(|o| !o.is_inf()).count();
    let inf = sig.orders.len() - finite;
    if sig.branch_points.len() != finite {
        out.push(Violation::BranchPointCount { labels: sig.branch_points.len(), orders: finite });
    }
    if sig.exceptional_points.len() != inf {
        out.push(Violation::ExceptionalPointCount {
            labels: sig.exceptional_points.len(),
            orders: inf,
        });
    }
    let n = sig.branch_points.len();
    for (i, o) in sig.orders.iter().enumerate() {
        if (i < n) == o.is_inf() {
            out.push(Violation::Misaligned { position: i });
        }
    }
    let mut seen = HashSet::new();
    for label in sig.branch_points.iter().chain(&sig.exceptional_points) {
        if !seen.insert(label.as_str()) {
            out.push(Violation::DuplicateLabel { label: label.clone() });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn os(s: &str) -> OrderSet {
        OrderSet::parse(s).unwrap()
    }

    #[test]
    fn characteristic_examples() {
        assert_eq!(os("2,3,5").characteristic().0, Ratio::new(59, 30));
        assert_eq!(os("inf,inf").characteristic().0, Ratio::from_integer(2));
        assert_eq!(os("2,3,7").characteristic().0, Ratio::new(85, 42));
        assert_eq!(os("2,3,5").characteristic().to_string(), "59/30");
        assert_eq!(os("oo,∞").characteristic().to_string(), "2");
    }

    #[test]
    fn classify_examples() {
        let c = os("2,2,5").classify();
        assert_eq!(c.kind, SignatureKind::Elliptic);
        assert_eq!(c.family.unwrap().to_string(), "dihedron D_5");
        let c = os("3,3,3").classify();
        assert_eq!(c.kind, SignatureKind::Parabolic);
        assert_eq!(c.family.unwrap().to_string(), "regular triangle");
        let c = os("2,3,7").classify();
        assert_eq!(c, SignatureClass { kind: SignatureKind::Hyperbolic, family: None });
        assert_eq!(os("7,7").classify().family.unwrap().to_string(), "7-gon");
        assert_eq!(os("5,3,2").classify().family, Some(Family::Icosahedron));
    }

    #[test]
    fn invalid_sets_are_rejected() {
        let e = OrderSet::finite(&[3]).unwrap_err();
        assert_eq!(e, Error::Validation(vec![Violation::TooFewPoints { count: 1 }]));
        let e = OrderSet::finite(&[2, 3]).unwrap_err();
        assert_eq!(
            e,
            Error::Validation(vec![Violation::UnequalFinitePair { first: 2, second: 3 }])
        );
        assert!(OrderSet::finite(&[1, 2, 3]).is_err());
        assert!(OrderSet::parse("3,inf").is_err());
        assert!(OrderSet::parse("2,x").is_err());
    }

    #[test]
    fn elliptic_list_small() {
        let got: Vec<String> = enumerate_elliptic(5).iter().map(|s| s.to_string()).collect();
        let want = [
            "(2,2)", "(3,3)", "(4,4)", "(5,5)", "(2,2,2)", "(2,2,3)", "(2,2,4)", "(2,2,5)",
            "(2,3,3)", "(2,3,4)", "(2,3,5)",
        ];
        assert_eq!(got, want);
        assert!(!enumerate_elliptic(12).contains(&os("2,3,6")));
        assert_eq!(os("2,3,6").classify().kind, SignatureKind::Parabolic);
    }

    #[test]
    fn parabolic_list() {
        let p = enumerate_parabolic();
        assert!(p.contains(&os("2,2,inf")));
        assert!(p.contains(&os("2,2,2,2")));
        assert!(p.contains(&os("2,4,4")));
        assert!(!p.contains(&os("2,2,4")));
        assert_eq!(os("2,2,4").characteristic().0, Ratio::new(7, 4));
        for s in &p {
            assert_eq!(s.characteristic().0, Ratio::from_integer(2));
        }
    }

    #[test]
    fn scan_finds_only_the_five_families() {
        let listed: HashSet<OrderSet> = enumerate_elliptic(12).into_iter().collect();
        let scanned: HashSet<OrderSet> = scan_order_sets(12, 4, true)
            .into_iter()
            .filter(|s| s.classify().kind == SignatureKind::Elliptic)
            .collect();
        assert_eq!(listed, scanned);
    }

    #[test]
    fn group_orders() {
        assert_eq!(os("2,3,5").expected_group_order().unwrap(), GroupOrder::Finite(60));
        assert_eq!(os("3,3,3").expected_group_order().unwrap(), GroupOrder::Infinite);
        for k in 2..=20 {
            let kk = OrderSet::finite(&[k, k]).unwrap();
            assert_eq!(kk.expected_group_order().unwrap(), GroupOrder::Finite(k as u64));
            let d = OrderSet::finite(&[2, 2, k]).unwrap();
            assert_eq!(d.expected_group_order().unwrap(), GroupOrder::Finite(2 * k as u64));
        }
        assert_eq!(os("2,3,3").expected_group_order().unwrap(), GroupOrder::Finite(12));
        assert_eq!(os("2,3,4").expected_group_order().unwrap(), GroupOrder::Finite(24));
    }

    fn sig(a: &[&str], b: &[&str], r: &str) -> Signature {
        Signature {
            branch_points: a.iter().map(|s| s.to_string()).collect(),
            exceptional_points: b.iter().map(|s| s.to_string()).collect(),
            orders: r.split(',').map(|t| t.parse().unwrap()).collect(),
        }
    }

    #[test]
    fn signature_validation() {
        let v = validate_signature(&sig(&["a1"], &[], "3")).unwrap_err();
        assert_eq!(v, vec![Violation::TooFewPoints { count: 1 }]);
        assert!(v[0].to_string().contains("n+k≥2"));
        let v = validate_signature(&sig(&["a1", "a2"], &[], "2,3")).unwrap_err();
        assert!(v[0].to_string().contains("two finite orders must be equal"));
        assert!(validate_signature(&sig(&["1", "-1"], &["inf"], "2,2,inf")).is_ok());
        let v = validate_signature(&sig(&["p", "p", "q"], &[], "2,3,5")).unwrap_err();
        assert_eq!(v, vec![Violation::DuplicateLabel { label: "p".into() }]);
        let v = validate_signature(&sig(&["p", "q"], &["r"], "2,inf,2")).unwrap_err();
        assert_eq!(v.len(), 2);
    }

    fn order_strategy() -> impl Strategy<Value = Order> {
        prop_oneof![4 => (2u32..40).prop_map(Order::Finite), 1 => Just(Order::Inf)]
    }

    proptest! {
        #[test]
        fn characteristic_permutation_invariant(mut v in prop::collection::vec(order_strategy(), 3..6), seed in any::<u64>()) {
            let a = characteristic_of(&v);
            let n = v.len();
            v.rotate_left((seed as usize) % n);
            v.swap(0, (seed as usize / 7) % n);
            prop_assert_eq!(a, characteristic_of(&v));
        }

        #[test]
        fn characteristic_strictly_monotone(v in prop::collection::vec(2u32..40, 3..6), i in 0usize..6, bump in 1u32..10) {
            let i = i % v.len();
            let base: Vec<Order> = v.iter().map(|&r| Order::Finite(r)).collect();
            let mut up = base.clone();
            up[i] = Order::Finite(v[i] + bump);
            prop_assert!(characteristic_of(&up) > characteristic_of(&base));
            up[i] = Order::Inf;
            prop_assert!(characteristic_of(&up) > characteristic_of(&base));
        }

        #[test]
        fn classification_is_three_way(v in prop::collection::vec(order_strategy(), 3..6)) {
            let s = OrderSet::new(v).unwrap();
            let chi = s.characteristic().0;
            let two = Ratio::from_integer(2);
            let c = s.classify();
            match c.kind {
                SignatureKind::Elliptic => prop_assert!(chi < two),
                SignatureKind::Parabolic => prop_assert!(chi == two),
                SignatureKind::Hyperbolic => prop_assert!(chi > two),
            }
            prop_assert_eq!(c.family.is_some(), c.kind != SignatureKind::Hyperbolic);
        }
    }
}
