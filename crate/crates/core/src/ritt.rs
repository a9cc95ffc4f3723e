//! Prime degree maps whose monodromy is metacyclic, `x -> a x + b (mod p)`.
//!
//! Riemann-Hurwitz for such a map of degree `p` reads
//! `2 = 2p - sum (p - 1 - (p - 1)/n_i)`, where `n_i` is the order of the
//! multiplier at a branch point (`Inf` for a translation, which is a single
//! `p`-cycle). This is equivalent to `sum (1 - 1/n_i) = 2`.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::signature::{characteristic_of, format_orders, Order, OrderSet, SignatureClass, SignatureKind};

/// Largest prime accepted by [`enumerate_branch_data`].
pub const MAX_PRIME: u32 = 101;

/// Most branch points a datum can have: each contributes at least `1/2`.
const MAX_POINTS: usize = 4;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Multiplicative order of `a` modulo the prime `p`.
pub fn multiplicative_order(a: u32, p: u32) -> u32 {
    let mut x = a % p;
    let mut k = 1;
    while x != 1 {
        x = x * a % p;
        k += 1;
    }
    k
}

/// `x -> a x + b` on `Z/p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MetacyclicPerm {
    pub p: u32,
    pub a: u32,
    pub b: u32,
}

impl MetacyclicPerm {
    pub fn new(p: u32, a: u32, b: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::usage(format!("{p} is not prime")));
        }
        if a.is_multiple_of(p) {
            return Err(Error::usage("multiplier must be a unit"));
        }
        Ok(MetacyclicPerm { p, a: a % p, b: b % p })
    }

    pub fn apply(&self, x: u32) -> u32 {
        (self.a * x + self.b) % self.p
    }

    /// Cycle lengths by direct decomposition, ascending.
    pub fn cycle_structure(&self) -> Vec<u32> {
        let p = self.p as usize;
        let mut seen = vec![false; p];
        let mut lens = Vec::new();
        for s in 0..p {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x as u32) as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    /// Order of the local branching this permutation describes: the order of
    /// `a`, or `Inf` for a nontrivial translation.
    pub fn branching_order(&self) -> Option<Order> {
        match (self.a, self.b) {
            (1, 0) => None,
            (1, _) => Some(Order::Inf),
            (a, _) => Some(Order::Finite(multiplicative_order(a, self.p))),
        }
    }
}

/// Divisors of `n` greater than 1, ascending.
fn divisors_above_one(n: u32) -> Vec<u32> {
    (2..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// A multiset of branching orders of a metacyclic map of degree `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BranchDatum {
    pub entries: Vec<Order>,
}

impl BranchDatum {
    /// `2p - sum (p - 1 - (p - 1)/n_i)`, with `Inf` contributing `p - 1`.
    pub fn riemann_hurwitz(&self, p: u32) -> Ratio<i64> {
        let p = i64::from(p);
        let total: Ratio<i64> = self
            .entries
            .iter()
            .map(|o| match o {
                Order::Finite(n) => Ratio::new(p - 1, 1) - Ratio::new(p - 1, i64::from(*n)),
                Order::Inf => Ratio::from(p - 1),
            })
            .sum();
        Ratio::from(2 * p) - total
    }
}

impl std::fmt::Display for BranchDatum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", format_orders(&self.entries))
    }
}

/// All data for degree `p` with `sum (1 - 1/n_i) = 2`, entries drawn from the
/// divisors of `p - 1` above 1 and `Inf`. Sorted by length, then entries.
pub fn enumerate_branch_data(p: u32) -> Result<Vec<BranchDatum>> {
    if !is_prime(p) {
        return Err(Error::usage(format!("{p} is not prime")));
    }
    if p > MAX_PRIME {
        return Err(Error::resource("prime for branch data", u64::from(MAX_PRIME)));
    }
    let mut alphabet: Vec<Order> = divisors_above_one(p - 1).into_iter().map(Order::Finite).collect();
    alphabet.push(Order::Inf);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(alphabet: &[Order], start: usize, cur: &mut Vec<Order>, out: &mut Vec<BranchDatum>) {
        let chi = characteristic_of(cur);
        if cur.len() >= 2 && chi == Ratio::from(2) {
            out.push(BranchDatum { entries: cur.clone() });
        }
        if cur.len() == MAX_POINTS || chi >= Ratio::from(2) {
            return;
        }
        for i in start..alphabet.len() {
            cur.push(alphabet[i]);
            rec(alphabet, i, cur, out);
            cur.pop();
        }
    }
    rec(&alphabet, 0, &mut cur, &mut out);
    out.sort_by(|a, b| a.entries.len().cmp(&b.entries.len()).then(a.entries.cmp(&b.entries)));
    Ok(out)
}

/// Orders of the covering: a translation is a `p`-cycle, so `Inf` becomes `p`.
pub fn realized_signature(d: &BranchDatum, p: u32) -> Result<OrderSet> {
    OrderSet::new(
        d.entries
            .iter()
            .map(|o| match o {
                Order::Inf => Order::Finite(p),
                f => *f,
            })
            .collect(),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct RittEntry {
    pub datum: BranchDatum,
    pub realized: OrderSet,
    pub class: SignatureClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct RittReport {
    pub p: u32,
    pub entries: Vec<RittEntry>,
    /// No realized signature is hyperbolic.
    pub nonhyperbolic: bool,
}

/// Classifies the realized signature of every branch datum of degree `p`.
/// `p = 2` has no finite entries; its only datum is `(Inf, Inf)`.
pub fn verify_nonhyperbolic(p: u32) -> Result<RittReport> {
    let data = enumerate_branch_data(p)?;
    let mut entries = Vec::with_capacity(data.len());
    for d in data {
        if d.riemann_hurwitz(p) != Ratio::from(2) {
            return Err(Error::Consistency(format!("{d} fails Riemann-Hurwitz for p = {p}")));
        }
        let realized = realized_signature(&d, p)?;
        let class = realized.classify();
        entries.push(RittEntry { datum: d, realized, class });
    }
    let nonhyperbolic = entries.iter().all(|e| e.class.kind != SignatureKind::Hyperbolic);
    Ok(RittReport { p, entries, nonhyperbolic })
}

/// Cycle count predicted for multiplier `a != 1`: one fixed point plus
/// `(p - 1)/ord(a)` cycles.
pub fn predicted_cycle_count(p: u32, a: u32) -> u32 {
    1 + (p - 1) / multiplicative_order(a, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Family;
    use Order::{Finite as F, Inf};

    fn datum(v: &[Order]) -> BranchDatum {
        BranchDatum { entries: v.to_vec() }
    }

    /// Independent search: all sorted tuples over the alphabet, lengths 2..=6,
    /// tested with floating point sums.
    fn brute(p: u32) -> Vec<Vec<Order>> {
        let mut alpha: Vec<Order> = (2..p).filter(|d| (p - 1).is_multiple_of(*d)).map(F).collect();
        alpha.push(Inf);
        let mut all: Vec<Vec<Order>> = vec![vec![]];
        let mut out = Vec::new();
        for _ in 0..6 {
            let mut next = Vec::new();
            for t in &all {
                for &o in &alpha {
                    if t.last().is_some_and(|&l| l > o) {
                        continue;
                    }
                    let mut t2 = t.clone();
                    t2.push(o);
                    let s: f64 = t2.iter().map(|o| match o { F(n) => 1.0 - 1.0 / *n as f64, Inf => 1.0 }).sum();
                    if t2.len() >= 2 && (s - 2.0).abs() < 1e-12 {
                        out.push(t2.clone());
                    }
                    next.push(t2);
                }
            }
            all = next;
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    #[test]
    fn cycle_structures() {
        assert_eq!(MetacyclicPerm::new(5, 4, 0).unwrap().cycle_structure(), vec![1, 2, 2]);
        assert_eq!(MetacyclicPerm::new(5, 1, 1).unwrap().cycle_structure(), vec![5]);
        assert_eq!(MetacyclicPerm::new(7, 3, 2).unwrap().cycle_structure(), vec![1, 6]);
        assert_eq!(MetacyclicPerm::new(7, 1, 0).unwrap().cycle_structure(), vec![1; 7]);
        assert!(MetacyclicPerm::new(9, 2, 0).is_err());
    }

    #[test]
    fn cycle_count_formula_up_to_101() {
        for p in (3..=MAX_PRIME).filter(|&p| is_prime(p)) {
            for a in 2..p {
                for b in [0, 1, p - 1] {
                    let m = MetacyclicPerm::new(p, a, b).unwrap();
                    let cs = m.cycle_structure();
                    let n = multiplicative_order(a, p);
                    assert_eq!(cs.len() as u32, predicted_cycle_count(p, a));
                    assert_eq!(cs.iter().filter(|&&l| l == 1).count(), 1);
                    assert!(cs.iter().all(|&l| l == 1 || l == n));
                }
            }
        }
    }

    #[test]
    fn data_for_five_and_seven() {
        let d5 = enumerate_branch_data(5).unwrap();
        assert_eq!(
            d5,
            vec![datum(&[Inf, Inf]), datum(&[F(2), F(2), Inf]), datum(&[F(2), F(4), F(4)]), datum(&[F(2), F(2), F(2), F(2)])]
        );
        let d7 = enumerate_branch_data(7).unwrap();
        for want in [&[F(2), F(2), Inf][..], &[Inf, Inf], &[F(2), F(3), F(6)], &[F(3), F(3), F(3)], &[F(2), F(2), F(2), F(2)]] {
            assert!(d7.contains(&datum(want)), "{}", format_orders(want));
        }
        assert!(enumerate_branch_data(9).is_err());
        assert!(enumerate_branch_data(103).is_err());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for p in (2..=MAX_PRIME).filter(|&p| is_prime(p)) {
            let got: Vec<Vec<Order>> = enumerate_branch_data(p).unwrap().into_iter().map(|d| d.entries).collect();
            assert_eq!(got, brute(p), "p = {p}");
        }
    }

    #[test]
    fn realized() {
        let r = realized_signature(&datum(&[F(2), F(2), Inf]), 5).unwrap();
        assert_eq!(r.to_string(), "(2,2,5)");
        assert_eq!(r.classify().family, Some(Family::Dihedron(5)));
        let r = realized_signature(&datum(&[Inf, Inf]), 7).unwrap();
        assert_eq!(r.classify().family, Some(Family::Polygon(7)));
        let r = realized_signature(&datum(&[F(2), F(2), F(2), F(2)]), 11).unwrap();
        assert_eq!(r.classify().family, Some(Family::Rectangle));
    }

    #[test]
    fn nonhyperbolic_for_all_primes() {
        let r5 = verify_nonhyperbolic(5).unwrap();
        let kinds: Vec<_> = r5.entries.iter().map(|e| e.class.kind).collect();
        assert_eq!(kinds.iter().filter(|k| **k == SignatureKind::Elliptic).count(), 2);
        assert_eq!(kinds.iter().filter(|k| **k == SignatureKind::Parabolic).count(), 2);
        let r3 = verify_nonhyperbolic(3).unwrap();
        assert_eq!(r3.entries.len(), 3);
        let r2 = verify_nonhyperbolic(2).unwrap();
        assert_eq!(r2.entries.len(), 1);
        assert_eq!(r2.entries[0].realized.to_string(), "(2,2)");
        for p in (2..=MAX_PRIME).filter(|&p| is_prime(p)) {
            let r = verify_nonhyperbolic(p).unwrap();
            assert!(r.nonhyperbolic, "p = {p}");
            for e in &r.entries {
                assert_eq!(e.datum.riemann_hurwitz(p), Ratio::from(2));
                assert!(e.realized.characteristic().value() <= Ratio::from(2));
            }
        }
    }
}
