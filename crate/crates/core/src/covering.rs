//! Coverings with a given signature, modelled as Hurwitz tuples.
//!
//! A degree-`m` covering of the sphere branched over `n + k` points is a tuple
//! of permutations `(s_1, ..., s_{n+k})` of the fiber with `s_1 ... s_{n+k} = 1`
//! generating a transitive group. Two tuples describe equivalent coverings iff
//! they are simultaneously conjugate in `S_m`.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpgroup::{todd_coxeter, OrbifoldPresentation, DEFAULT_MAX_COSETS};
use crate::perm::{core, is_transitive, PermGroup, Permutation};
use crate::signature::{Order, OrderSet, SignatureClass, SignatureKind};

/// Largest degree for exhaustive enumeration.
pub const MAX_EXHAUSTIVE_DEGREE: usize = 8;

/// Largest group whose regular action [`normalization`] will build.
pub const DEFAULT_MAX_NORMALIZATION_ORDER: u64 = 50_000;

/// Upper bound on candidate tuples examined by one exhaustive run.
const SEARCH_BUDGET: u128 = 400_000_000;

/// A tuple of permutations of one fiber with identity product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HurwitzTuple {
    degree: usize,
    sigma: Vec<Permutation>,
}

impl HurwitzTuple {
    /// Checks equal degrees and the product relation. Transitivity is not
    /// required here; see [`HurwitzTuple::is_transitive`].
    pub fn new(sigma: Vec<Permutation>) -> Result<Self> {
        let degree = sigma
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| Error::usage("empty tuple"))?;
        if sigma.iter().any(|s| s.degree() != degree) {
            return Err(Error::usage("tuple entries have different degrees"));
        }
        let t = HurwitzTuple { degree, sigma };
        if !t.product().is_identity() {
            return Err(Error::usage("tuple product is not the identity"));
        }
        Ok(t)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn sigma(&self) -> &[Permutation] {
        &self.sigma
    }

    pub fn product(&self) -> Permutation {
        self.sigma
            .iter()
            .fold(Permutation::identity(self.degree), |acc, s| acc.then(s))
    }

    pub fn is_transitive(&self) -> bool {
        is_transitive(&self.sigma, self.degree)
    }

    /// Element order of each entry.
    pub fn realized_orders(&self) -> Vec<u64> {
        self.sigma.iter().map(Permutation::order).collect()
    }

    pub fn monodromy_group(&self) -> Result<PermGroup> {
        PermGroup::generate(self.degree, self.sigma.clone())
    }

    /// Whether every finite slot of `r` is realized with exactly that order.
    /// Infinite slots carry no constraint.
    pub fn matches_orders(&self, r: &OrderSet) -> bool {
        r.len() == self.sigma.len()
            && r.orders().iter().zip(&self.sigma).all(|(o, s)| match o {
                Order::Finite(k) => s.order() == u64::from(*k),
                Order::Inf => true,
            })
    }

    /// `(p^-1 s_1 p, ..., p^-1 s_n p)`.
    pub fn conjugate_by(&self, p: &Permutation) -> HurwitzTuple {
        HurwitzTuple {
            degree: self.degree,
            sigma: self.sigma.iter().map(|s| s.conjugate_by(p)).collect(),
        }
    }

    /// Lexicographically least tuple in the simultaneous conjugacy class,
    /// comparing the concatenated image arrays. Exhaustive over `S_m`, so
    /// limited to `m <= 8`.
    pub fn canonical(&self) -> Result<HurwitzTuple> {
        if self.degree > MAX_EXHAUSTIVE_DEGREE {
            return Err(Error::resource("canonical form degree", MAX_EXHAUSTIVE_DEGREE as u64));
        }
        let flat: Vec<Arr> = self.sigma.iter().map(to_arr).collect();
        let best = lex_min_conjugate(&flat, self.degree);
        Ok(from_arrs(&best, self.degree))
    }

    /// A conjugation-invariant key for transitive tuples, computed from
    /// breadth-first relabellings. Equal keys iff conjugate.
    pub fn class_key(&self) -> Vec<u32> {
        let arrs: Vec<Vec<u32>> = self.sigma.iter().map(|s| s.images().to_vec()).collect();
        bfs_key(&arrs, self.degree)
    }
}

/// Group data of a covering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonodromyReport {
    pub group_order: u64,
    pub solvable: bool,
    /// Orders of the derived series terms.
    pub derived_series: Vec<u64>,
    pub transitive: bool,
    /// Element order of each entry, aligned with the tuple.
    pub realized_orders: Vec<u64>,
    /// Class of the requested set on an exact match (infinite slots count as
    /// infinite branching). Otherwise the class of the realized orders with
    /// unbranched (order 1) points dropped, or `None` when those do not form
    /// a valid order set.
    pub signature_class: Option<SignatureClass>,
    /// Every requested finite order is realized exactly. Always true when no
    /// order set was requested.
    pub exact_match: bool,
}

/// Monodromy report of a tuple, compared against `requested` when given.
pub fn monodromy_report(t: &HurwitzTuple, requested: Option<&OrderSet>) -> Result<MonodromyReport> {
    let g = t.monodromy_group()?;
    let series = g.derived_series();
    let realized_orders = t.realized_orders();
    let branched: Vec<Order> = realized_orders
        .iter()
        .filter(|&&o| o > 1)
        .map(|&o| Order::Finite(o as u32))
        .collect();
    let exact_match = requested.is_none_or(|r| t.matches_orders(r));
    let signature_class = match requested {
        Some(r) if exact_match => Some(r.classify()),
        _ => OrderSet::new(branched).ok().map(|s| s.classify()),
    };
    Ok(MonodromyReport {
        group_order: g.order(),
        solvable: series.solvable,
        derived_series: series.orders,
        transitive: t.is_transitive(),
        realized_orders,
        signature_class,
        exact_match,
    })
}

// ---------------------------------------------------------------------------
// fixed-size permutations for the enumeration inner loop

type Arr = [u8; MAX_EXHAUSTIVE_DEGREE];

fn to_arr(p: &Permutation) -> Arr {
    let mut a = [0u8; MAX_EXHAUSTIVE_DEGREE];
    for (i, &x) in p.images().iter().enumerate() {
        a[i] = x as u8;
    }
    a
}

fn from_arrs(arrs: &[Arr], m: usize) -> HurwitzTuple {
    HurwitzTuple {
        degree: m,
        sigma: arrs
            .iter()
            .map(|a| Permutation::from_images_unchecked(a[..m].iter().map(|&x| u32::from(x)).collect()))
            .collect(),
    }
}

#[inline]
fn compose(a: &Arr, b: &Arr, m: usize) -> Arr {
    let mut c = [0u8; MAX_EXHAUSTIVE_DEGREE];
    for i in 0..m {
        c[i] = b[a[i] as usize];
    }
    c
}

#[inline]
fn invert(a: &Arr, m: usize) -> Arr {
    let mut c = [0u8; MAX_EXHAUSTIVE_DEGREE];
    for i in 0..m {
        c[a[i] as usize] = i as u8;
    }
    c
}

fn arr_order(a: &Arr, m: usize) -> u64 {
    let mut seen = [false; MAX_EXHAUSTIVE_DEGREE];
    let mut order = 1u64;
    for s in 0..m {
        if seen[s] {
            continue;
        }
        let mut len = 0u64;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = a[x] as usize;
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

fn arrs_transitive(arrs: &[Arr], m: usize) -> bool {
    let mut seen = [false; MAX_EXHAUSTIVE_DEGREE];
    let mut stack = [0u8; MAX_EXHAUSTIVE_DEGREE];
    let mut top = 1;
    seen[0] = true;
    let mut count = 1;
    while top > 0 {
        top -= 1;
        let x = stack[top] as usize;
        for a in arrs {
            let y = a[x] as usize;
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack[top] = y as u8;
                top += 1;
            }
        }
    }
    count == m
}

fn all_perms(m: usize) -> Vec<Arr> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..m as u8).collect();
    fn heap(k: usize, cur: &mut Vec<u8>, out: &mut Vec<Arr>) {
        if k <= 1 {
            let mut a = [0u8; MAX_EXHAUSTIVE_DEGREE];
            a[..cur.len()].copy_from_slice(cur);
            out.push(a);
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k.is_multiple_of(2) {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(m, &mut cur, &mut out);
    out.sort();
    out
}

/// Partitions of `m` into parts, largest first.
fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// One element of each conjugacy class of `S_m`: consecutive cycles.
fn class_representatives(m: usize) -> Vec<Arr> {
    partitions(m)
        .into_iter()
        .map(|parts| {
            let mut a = [0u8; MAX_EXHAUSTIVE_DEGREE];
            let mut start = 0;
            for len in parts {
                for j in 0..len {
                    a[start + j] = (start + (j + 1) % len) as u8;
                }
                start += len;
            }
            a
        })
        .collect()
}

fn lex_min_conjugate(tuple: &[Arr], m: usize) -> Vec<Arr> {
    let mut best: Option<Vec<Arr>> = None;
    for p in all_perms(m) {
        // p^-1 s p sends p(x) to p(s(x))
        let conj: Vec<Arr> = tuple
            .iter()
            .map(|s| {
                let mut c = [0u8; MAX_EXHAUSTIVE_DEGREE];
                for x in 0..m {
                    c[p[x] as usize] = p[s[x] as usize];
                }
                c
            })
            .collect();
        if best.as_ref().is_none_or(|b| conj < *b) {
            best = Some(conj);
        }
    }
    best.unwrap_or_default()
}

fn bfs_key<T: Copy + Into<u64>>(tuple: &[impl AsRef<[T]>], m: usize) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for start in 0..m {
        let mut label = vec![u32::MAX; m];
        let mut order = Vec::with_capacity(m);
        label[start] = 0;
        order.push(start);
        let mut k = 0;
        while k < order.len() {
            let x = order[k];
            k += 1;
            for s in tuple {
                let y = s.as_ref()[x].into() as usize;
                if label[y] == u32::MAX {
                    label[y] = order.len() as u32;
                    order.push(y);
                }
            }
        }
        if order.len() < m {
            // not transitive: fall back to the raw tuple
            return tuple
                .iter()
                .flat_map(|s| s.as_ref()[..m].iter().map(|&v| v.into() as u32).collect::<Vec<_>>())
                .collect();
        }
        let mut key = Vec::with_capacity(tuple.len() * m);
        for s in tuple {
            let mut row = vec![0u32; m];
            for x in 0..m {
                row[label[x] as usize] = label[s.as_ref()[x].into() as usize];
            }
            key.extend(row);
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.unwrap_or_default()
}

fn candidates(order: Order, by_order: &HashMap<u64, Vec<Arr>>, all: &[Arr]) -> Vec<Arr> {
    match order {
        Order::Finite(r) => by_order.get(&u64::from(r)).cloned().unwrap_or_default(),
        Order::Inf => all.to_vec(),
    }
}

/// All transitive Hurwitz tuples of degree `m` realizing `r` exactly, one per
/// simultaneous conjugacy class, each the lexicographically least member of
/// its class. Output is sorted and independent of thread count.
pub fn enumerate_coverings(r: &OrderSet, m: usize) -> Result<Vec<HurwitzTuple>> {
    if m == 0 {
        return Err(Error::usage("degree must be positive"));
    }
    if m > MAX_EXHAUSTIVE_DEGREE {
        return Err(Error::resource("exhaustive enumeration degree", MAX_EXHAUSTIVE_DEGREE as u64));
    }
    let slots = r.orders();
    let n = slots.len();
    let all = all_perms(m);
    let mut by_order: HashMap<u64, Vec<Arr>> = HashMap::new();
    for p in &all {
        by_order.entry(arr_order(p, m)).or_default().push(*p);
    }
    // the first entry only matters up to conjugacy
    let first: Vec<Arr> = class_representatives(m)
        .into_iter()
        .filter(|p| match slots[0] {
            Order::Finite(k) => arr_order(p, m) == u64::from(k),
            Order::Inf => true,
        })
        .collect();
    let middle: Vec<Vec<Arr>> = slots[1..n - 1].iter().map(|&o| candidates(o, &by_order, &all)).collect();
    let work: u128 = first.len() as u128 * middle.iter().map(|c| c.len() as u128).product::<u128>();
    if work > SEARCH_BUDGET {
        return Err(Error::resource("exhaustive search size", SEARCH_BUDGET as u64));
    }
    let last_order = slots[n - 1];

    // parallel over the outermost free choice
    let seeds: Vec<(Arr, Option<Arr>)> = if middle.is_empty() {
        first.iter().map(|&a| (a, None)).collect()
    } else {
        first.iter().flat_map(|&a| middle[0].iter().map(move |&b| (a, Some(b)))).collect()
    };
    let found: Vec<Vec<Vec<u32>>> = seeds
        .par_iter()
        .map(|&(a, b)| {
            let mut local: HashSet<Vec<u32>> = HashSet::new();
            let mut prefix = vec![a];
            let mut prod = a;
            if let Some(b) = b {
                prefix.push(b);
                prod = compose(&prod, &b, m);
            }
            search(&middle[usize::from(b.is_some()).min(middle.len())..], &mut prefix, prod, m, last_order, &mut local);
            local.into_iter().collect()
        })
        .collect();
    let mut keys: HashSet<Vec<u32>> = HashSet::new();
    for v in found {
        keys.extend(v);
    }
    let mut reps: Vec<Vec<Arr>> = keys
        .into_par_iter()
        .map(|key| {
            let tuple: Vec<Arr> = key
                .chunks(m)
                .map(|row| {
                    let mut a = [0u8; MAX_EXHAUSTIVE_DEGREE];
                    for (i, &v) in row.iter().enumerate() {
                        a[i] = v as u8;
                    }
                    a
                })
                .collect();
            lex_min_conjugate(&tuple, m)
        })
        .collect();
    reps.sort();
    Ok(reps.iter().map(|t| from_arrs(t, m)).collect())
}

fn search(
    rest: &[Vec<Arr>],
    prefix: &mut Vec<Arr>,
    prod: Arr,
    m: usize,
    last_order: Order,
    out: &mut HashSet<Vec<u32>>,
) {
    match rest.split_first() {
        None => {
            let last = invert(&prod, m);
            let ok = match last_order {
                Order::Finite(k) => arr_order(&last, m) == u64::from(k),
                Order::Inf => true,
            };
            if !ok {
                return;
            }
            prefix.push(last);
            if arrs_transitive(prefix, m) {
                let rows: Vec<&[u8]> = prefix.iter().map(|a| &a[..m]).collect();
                out.insert(bfs_key(&rows, m));
            }
            prefix.pop();
        }
        Some((cands, tail)) => {
            for c in cands {
                prefix.push(*c);
                search(tail, prefix, compose(&prod, c, m), m, last_order, out);
                prefix.pop();
            }
        }
    }
}

fn random_with_order<R: Rng>(rng: &mut R, m: usize, order: Order, tries: usize) -> Option<Permutation> {
    for _ in 0..tries {
        let mut v: Vec<u32> = (0..m as u32).collect();
        for i in (1..m).rev() {
            let j = rng.random_range(0..=i);
            v.swap(i, j);
        }
        let p = Permutation::from_images_unchecked(v);
        match order {
            Order::Inf => return Some(p),
            Order::Finite(k) if p.order() == u64::from(k) => return Some(p),
            _ => {}
        }
    }
    None
}

/// Seeded random search for transitive tuples realizing `r` exactly at any
/// degree. Not exhaustive: returns the distinct classes hit by `samples`
/// attempts, keyed by [`HurwitzTuple::class_key`] and sorted by key.
pub fn random_coverings(r: &OrderSet, m: usize, samples: usize, seed: u64) -> Result<Vec<HurwitzTuple>> {
    if m == 0 {
        return Err(Error::usage("degree must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let slots = r.orders();
    let mut found: HashMap<Vec<u32>, HurwitzTuple> = HashMap::new();
    'sample: for _ in 0..samples {
        let mut sigma = Vec::with_capacity(slots.len());
        let mut prod = Permutation::identity(m);
        for &o in &slots[..slots.len() - 1] {
            match random_with_order(&mut rng, m, o, 10_000) {
                Some(p) => {
                    prod = prod.then(&p);
                    sigma.push(p);
                }
                None => continue 'sample,
            }
        }
        sigma.push(prod.inverse());
        let t = HurwitzTuple { degree: m, sigma };
        if t.matches_orders(r) && t.is_transitive() {
            found.entry(t.class_key()).or_insert(t);
        }
    }
    let mut v: Vec<(Vec<u32>, HurwitzTuple)> = found.into_iter().collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(v.into_iter().map(|(_, t)| t).collect())
}

/// A finite group with marked images of the presentation generators.
#[derive(Clone, Debug)]
pub struct MarkedGroup {
    pub group: PermGroup,
    pub marked: Vec<Permutation>,
    pub orders: OrderSet,
}

impl MarkedGroup {
    /// The regular action of the (finite) orbifold group of `r` on itself,
    /// from coset enumeration over the trivial subgroup.
    pub fn regular(r: &OrderSet) -> Result<Self> {
        let pres = OrbifoldPresentation::from_orders(r);
        let table = todd_coxeter(&pres, &[], DEFAULT_MAX_COSETS);
        let marked = table.perm_rep()?;
        let group = PermGroup::generate(table.coset_count(), marked.clone())?;
        Ok(MarkedGroup { group, marked, orders: r.clone() })
    }
}

/// Action of the marked generators on the right cosets `F x` of `f` in `g`.
/// Realized orders may be proper divisors of the requested ones when the
/// core of `f` is not trivial.
pub fn quotient_covering(g: &MarkedGroup, f: &PermGroup) -> Result<HurwitzTuple> {
    if !f.is_subgroup_of(&g.group) {
        return Err(Error::usage("F is not a subgroup of G"));
    }
    let coset_of = |x: &Permutation| -> Permutation {
        f.elements().iter().map(|h| h.then(x)).min().expect("nonempty subgroup")
    };
    let degree = g.group.degree();
    let mut reps = vec![coset_of(&Permutation::identity(degree))];
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(reps[0].clone(), 0);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); g.marked.len()];
    let mut k = 0;
    while k < reps.len() {
        let x = reps[k].clone();
        for (i, s) in g.marked.iter().enumerate() {
            let y = coset_of(&x.then(s));
            let j = match index.get(&y) {
                Some(&j) => j,
                None => {
                    let j = reps.len();
                    index.insert(y.clone(), j);
                    reps.push(y);
                    j
                }
            };
            images[i].push(j as u32);
        }
        k += 1;
    }
    let sigma = images
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>>>()?;
    HurwitzTuple::new(sigma)
}

/// Whether `f` has trivial core in `g`, i.e. gives a covering with the full
/// signature in the finite (elliptic) case.
pub fn is_admissible(g: &PermGroup, f: &PermGroup) -> bool {
    core(g, f).order() == 1
}

/// Regular action of the monodromy group on itself with the same marked
/// generators: the Galois closure of the covering.
pub fn normalization(t: &HurwitzTuple, max_order: u64) -> Result<HurwitzTuple> {
    let g = PermGroup::generate_bounded(t.degree, t.sigma.clone(), max_order)?;
    let elems = g.elements();
    let index: HashMap<&Permutation, u32> = elems.iter().enumerate().map(|(i, e)| (e, i as u32)).collect();
    let sigma = t
        .sigma
        .iter()
        .map(|s| Permutation::from_images_unchecked(elems.iter().map(|e| index[&e.then(s)]).collect()))
        .collect();
    HurwitzTuple::new(sigma)
}

/// Whether the group generated by the tuple acts regularly (transitive with
/// trivial point stabilizers).
pub fn is_regular(t: &HurwitzTuple) -> Result<bool> {
    let g = t.monodromy_group()?;
    Ok(t.is_transitive()
        && g.order() as usize == t.degree
        && g.elements().iter().filter(|e| e.apply(0) == 0).count() == 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeSummary {
    pub degree: usize,
    pub classes: usize,
    /// Distinct monodromy orders seen at this degree.
    pub group_orders: Vec<u64>,
    pub solvable: Vec<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeterminismReport {
    pub orders: OrderSet,
    pub expected_order: u64,
    pub per_degree: Vec<DegreeSummary>,
    /// Every class at every degree has the expected group order and a single
    /// solvability verdict.
    pub holds: bool,
}

/// Enumerates all degrees in `degrees` and checks that every covering has the
/// same monodromy group order, `2 / (2 - chi)`.
pub fn elliptic_determinism_check(
    r: &OrderSet,
    degrees: std::ops::RangeInclusive<usize>,
) -> Result<DeterminismReport> {
    if r.classify().kind != SignatureKind::Elliptic {
        return Err(Error::usage(format!("{r} is not elliptic")));
    }
    let expected = r.expected_group_order()?.finite().expect("elliptic");
    let mut per_degree = Vec::new();
    let mut solvable_seen: HashSet<bool> = HashSet::new();
    let mut holds = true;
    for m in degrees {
        let tuples = enumerate_coverings(r, m)?;
        let mut orders = Vec::new();
        let mut solv = Vec::new();
        for t in &tuples {
            let rep = monodromy_report(t, Some(r))?;
            holds &= rep.group_order == expected && rep.transitive && rep.exact_match;
            solvable_seen.insert(rep.solvable);
            if !orders.contains(&rep.group_order) {
                orders.push(rep.group_order);
            }
            if !solv.contains(&rep.solvable) {
                solv.push(rep.solvable);
            }
        }
        orders.sort_unstable();
        per_degree.push(DegreeSummary { degree: m, classes: tuples.len(), group_orders: orders, solvable: solv });
    }
    holds &= solvable_seen.len() <= 1;
    Ok(DeterminismReport { orders: r.clone(), expected_order: expected, per_degree, holds })
}
