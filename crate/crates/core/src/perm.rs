//! Permutations and finite permutation groups.
//!
//! Permutations act on the right: `p.then(q)` applies `p` first. This is the
//! convention under which a coset table, a fiber transported along a path, and
//! a Hurwitz tuple all multiply left to right.
//!
//! Groups are small (desk scale), so most algorithms work on the full element
//! list. A Schreier–Sims stabilizer chain is kept as an independent route to
//! the group order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default bound on the number of elements materialized by closure.
pub const DEFAULT_MAX_GROUP_ORDER: u64 = 1_000_000;

/// Largest group accepted by [`subgroup_classes`].
pub const MAX_SUBGROUP_SCAN_ORDER: u64 = 60;

/// A permutation of `0..degree`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from its image array, rejecting non-bijections.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::usage(format!("image array {images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    /// Builds a permutation of `0..degree` from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let a = a as usize;
                if a >= degree || touched[a] {
                    return Err(Error::usage(format!("cycles {cycles:?} are not disjoint in degree {degree}")));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(0 1)(2 3 4)`; `()` is the identity.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        for chunk in s.split('(').skip(1) {
            let body = chunk
                .split(')')
                .next()
                .ok_or_else(|| Error::usage(format!("unbalanced cycle notation {s:?}")))?;
            let cycle = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|_| Error::usage(format!("bad point {t:?}"))))
                .collect::<Result<Vec<u32>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.inverse().then(&b.inverse()).then(a).then(b)
    }

    /// Disjoint cycles including fixed points, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths, ascending, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn check_degrees(degree: usize, gens: &[Permutation]) -> Result<()> {
    match gens.iter().find(|g| g.degree() != degree) {
        Some(g) => Err(Error::usage(format!(
            "generator of degree {} in a group of degree {degree}",
            g.degree()
        ))),
        None => Ok(()),
    }
}

/// All elements generated by `gens`, by breadth-first closure.
fn closure(degree: usize, gens: &[Permutation], max_order: u64) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if !seen.contains(&y) {
                if seen.len() as u64 >= max_order {
                    return Err(Error::resource("group order", max_order));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut v: Vec<Permutation> = seen.into_iter().collect();
    v.sort();
    Ok(v)
}

/// A permutation group with its generators and full sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermGroup {
    pub fn generate(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::generate_bounded(degree, generators, DEFAULT_MAX_GROUP_ORDER)
    }

    pub fn generate_bounded(degree: usize, generators: Vec<Permutation>, max_order: u64) -> Result<Self> {
        check_degrees(degree, &generators)?;
        let elements = closure(degree, &generators, max_order)?;
        Ok(PermGroup { degree, generators, elements })
    }

    /// Wraps a set of elements already known to be closed under
    /// multiplication, picking a small generating set greedily.
    pub fn from_closed_elements(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        let mut generators: Vec<Permutation> = Vec::new();
        let mut span: HashSet<Permutation> = HashSet::new();
        span.insert(Permutation::identity(degree));
        for e in &elements {
            if !span.contains(e) {
                generators.push(e.clone());
                let c = closure(degree, &generators, u64::MAX).expect("unbounded");
                span = c.into_iter().collect();
            }
        }
        PermGroup { degree, generators, elements }
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), elements: vec![Permutation::identity(degree)] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Elements in ascending image-array order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn is_transitive(&self) -> bool {
        is_transitive(&self.generators, self.degree)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.then(b) == b.then(a)))
    }

    /// Whether `self` is normalized by every generator of `g`.
    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        g.generators
            .iter()
            .all(|x| self.generators.iter().all(|h| self.contains(&h.conjugate_by(x))))
    }

    /// The commutator subgroup, as the normal closure of the generator
    /// commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut gens: Vec<Permutation> = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = Permutation::commutator(a, b);
                if !c.is_identity() && !gens.contains(&c) {
                    gens.push(c);
                }
            }
        }
        normal_closure(self, gens)
    }

    /// Derived series down to its stable term.
    pub fn derived_series(&self) -> DerivedSeries {
        let mut orders = vec![self.order()];
        let mut cur = self.clone();
        loop {
            let next = cur.derived_subgroup();
            if next.order() == cur.order() {
                break;
            }
            orders.push(next.order());
            cur = next;
        }
        let solvable = cur.order() == 1;
        DerivedSeries { orders, solvable }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().solvable
    }

    /// Canonical fingerprint: the sorted element image arrays.
    pub fn canonical_form(&self) -> Vec<Vec<u32>> {
        self.elements.iter().map(|e| e.images.clone()).collect()
    }
}

/// Smallest subgroup of `g` containing `seeds` and normalized by `g`.
fn normal_closure(g: &PermGroup, seeds: Vec<Permutation>) -> PermGroup {
    let degree = g.degree;
    let mut gens = seeds;
    loop {
        let elems = closure(degree, &gens, u64::MAX).expect("subgroup of a finite group");
        let set: HashSet<&Permutation> = elems.iter().collect();
        let mut extra = None;
        'outer: for h in &gens {
            for x in &g.generators {
                let c = h.conjugate_by(x);
                if !set.contains(&c) {
                    extra = Some(c);
                    break 'outer;
                }
            }
        }
        match extra {
            Some(c) => gens.push(c),
            None => return PermGroup { degree, generators: gens, elements: elems },
        }
    }
}

/// Orders of `G = G^(0) > G^(1) > ...` up to the first repeated term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedSeries {
    pub orders: Vec<u64>,
    pub solvable: bool,
}

impl DerivedSeries {
    /// Number of steps down to the trivial group, if solvable.
    pub fn derived_length(&self) -> Option<usize> {
        self.solvable.then(|| self.orders.len() - 1)
    }
}

/// Exact group order by full closure.
pub fn group_order(degree: usize, gens: &[Permutation]) -> Result<u64> {
    check_degrees(degree, gens)?;
    Ok(closure(degree, gens, DEFAULT_MAX_GROUP_ORDER)?.len() as u64)
}

/// Whether the orbit of point 0 is everything.
pub fn is_transitive(gens: &[Permutation], degree: usize) -> bool {
    if degree == 0 {
        return true;
    }
    let mut seen = vec![false; degree];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == degree
}

/// Derived series of the group generated by `gens`.
pub fn is_solvable(degree: usize, gens: &[Permutation]) -> Result<DerivedSeries> {
    Ok(PermGroup::generate(degree, gens.to_vec())?.derived_series())
}

struct ChainLevel {
    base: usize,
    /// transversal[p] maps the base point to p
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

/// Base and strong generating set built by deterministic Schreier–Sims.
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<ChainLevel>,
}

impl StabilizerChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> Result<Self> {
        check_degrees(degree, gens)?;
        let mut strong: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut base: Vec<usize> = Vec::new();
        loop {
            for g in &strong {
                if base.iter().all(|&b| g.apply(b) == b) {
                    let moved = (0..degree).find(|&i| g.apply(i) != i).expect("non-identity");
                    base.push(moved);
                }
            }
            let levels: Vec<ChainLevel> = (0..base.len())
                .map(|i| {
                    let fixing: Vec<&Permutation> = strong
                        .iter()
                        .filter(|g| base[..i].iter().all(|&b| g.apply(b) == b))
                        .collect();
                    build_level(degree, base[i], &fixing)
                })
                .collect();
            let chain = StabilizerChain { degree, levels };
            match chain.find_missing_generator(&strong, &base) {
                Some(h) => strong.push(h),
                None => return Ok(chain),
            }
        }
    }

    fn find_missing_generator(&self, strong: &[Permutation], base: &[usize]) -> Option<Permutation> {
        for i in (0..self.levels.len()).rev() {
            let level = &self.levels[i];
            let fixing: Vec<&Permutation> = strong
                .iter()
                .filter(|g| base[..i].iter().all(|&b| g.apply(b) == b))
                .collect();
            for &p in &level.orbit {
                let up = level.transversal[p].as_ref().expect("orbit point");
                for s in &fixing {
                    let q = s.apply(p);
                    let uq = level.transversal[q].as_ref().expect("orbit closed");
                    let schreier = up.then(s).then(&uq.inverse());
                    let residue = self.sift(schreier, i + 1);
                    if !residue.is_identity() {
                        return Some(residue);
                    }
                }
            }
        }
        None
    }

    fn sift(&self, mut g: Permutation, from: usize) -> Permutation {
        for level in &self.levels[from..] {
            let b = g.apply(level.base);
            match &level.transversal[b] {
                Some(u) => g = g.then(&u.inverse()),
                None => return g,
            }
        }
        g
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.sift(p.clone(), 0).is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }
}

fn build_level(degree: usize, base: usize, gens: &[&Permutation]) -> ChainLevel {
    let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
    transversal[base] = Some(Permutation::identity(degree));
    let mut orbit = vec![base];
    let mut k = 0;
    while k < orbit.len() {
        let p = orbit[k];
        k += 1;
        for g in gens {
            let q = g.apply(p);
            if transversal[q].is_none() {
                let u = transversal[p].as_ref().unwrap().then(g);
                transversal[q] = Some(u);
                orbit.push(q);
            }
        }
    }
    ChainLevel { base, transversal, orbit }
}

/// Group order via a stabilizer chain.
pub fn group_order_by_chain(degree: usize, gens: &[Permutation]) -> Result<u128> {
    Ok(StabilizerChain::new(degree, gens)?.order())
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: PermGroup,
    /// Number of subgroups in the class.
    pub class_size: usize,
}

impl SubgroupClass {
    pub fn order(&self) -> u64 {
        self.representative.order()
    }
}

/// Element indices and multiplication table of a small group.
struct Table<'a> {
    elements: &'a [Permutation],
    mul: Vec<Vec<u16>>,
    inv: Vec<u16>,
}

impl<'a> Table<'a> {
    fn new(g: &'a PermGroup) -> Self {
        let elements = g.elements();
        let index: HashMap<&Permutation, u16> =
            elements.iter().enumerate().map(|(i, e)| (e, i as u16)).collect();
        let mul = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.then(b)]).collect())
            .collect();
        let inv = elements.iter().map(|a| index[&a.inverse()]).collect();
        Table { elements, mul, inv }
    }

    fn span(&self, gens: &[u16]) -> Vec<u16> {
        let mut seen = vec![false; self.elements.len()];
        let id = self.elements.iter().position(Permutation::is_identity).unwrap() as u16;
        seen[id as usize] = true;
        let mut out = vec![id];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            k += 1;
            for &g in gens {
                let y = self.mul[x as usize][g as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn conjugate(&self, set: &[u16], g: u16) -> Vec<u16> {
        let gi = self.inv[g as usize] as usize;
        let mut v: Vec<u16> = set
            .iter()
            .map(|&s| self.mul[self.mul[gi][s as usize] as usize][g as usize])
            .collect();
        v.sort_unstable();
        v
    }
}

/// Representatives of the conjugacy classes of subgroups generated by at most
/// two elements, ordered by subgroup order then canonical element list.
///
/// For cyclic, dihedral, `A4`, `S4` and `A5` every subgroup is 2-generated,
/// so the list is complete there.
pub fn subgroup_classes(g: &PermGroup) -> Result<Vec<SubgroupClass>> {
    if g.order() > MAX_SUBGROUP_SCAN_ORDER {
        return Err(Error::resource("subgroup scan group order", MAX_SUBGROUP_SCAN_ORDER));
    }
    let t = Table::new(g);
    let n = g.elements().len() as u16;
    let mut subgroups: HashMap<Vec<u16>, Vec<u16>> = HashMap::new();
    for a in 0..n {
        for b in a..n {
            let s = t.span(&[a, b]);
            subgroups.entry(s).or_insert_with(|| if a == b { vec![a] } else { vec![a, b] });
        }
    }
    // canonical conjugate -> (representative set, its generators, class size)
    let mut classes: HashMap<Vec<u16>, (Vec<u16>, Vec<u16>, usize)> = HashMap::new();
    for set in subgroups.keys() {
        let conjugates: HashSet<Vec<u16>> = (0..n).map(|x| t.conjugate(set, x)).collect();
        let canon = conjugates.iter().min().unwrap().clone();
        classes.entry(canon.clone()).or_insert_with(|| {
            let rep_gens = subgroups[&canon].clone();
            (canon, rep_gens, conjugates.len())
        });
    }
    let mut out: Vec<(Vec<u16>, Vec<u16>, usize)> = classes.into_values().collect();
    out.sort_by(|x, y| (x.0.len(), &x.0).cmp(&(y.0.len(), &y.0)));
    Ok(out
        .into_iter()
        .map(|(set, gens, class_size)| {
            let generators: Vec<Permutation> = gens
                .iter()
                .map(|&i| t.elements[i as usize].clone())
                .filter(|p| !p.is_identity())
                .collect();
            let elements = set.iter().map(|&i| t.elements[i as usize].clone()).collect();
            SubgroupClass {
                representative: PermGroup { degree: g.degree, generators, elements },
                class_size,
            }
        })
        .collect())
}

/// Largest normal subgroup of `g` inside `f`: the intersection of all
/// conjugates of `f`.
pub fn core(g: &PermGroup, f: &PermGroup) -> PermGroup {
    let mut current: HashSet<Permutation> = f.elements().iter().cloned().collect();
    for x in g.elements() {
        let xi = x.inverse();
        // x^-1 F x contains e iff e conjugated back lies in F
        current.retain(|e| f.contains(&x.then(e).then(&xi)));
        if current.len() == 1 {
            break;
        }
    }
    PermGroup::from_closed_elements(g.degree, current.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn sym(n: usize) -> PermGroup {
        let mut cyc: Vec<u32> = (1..n as u32).collect();
        cyc.push(0);
        let gens = vec![p(n, "(0 1)"), Permutation::from_images(cyc).unwrap()];
        PermGroup::generate(n, gens).unwrap()
    }

    fn alt5() -> PermGroup {
        PermGroup::generate(5, vec![p(5, "(0 1 2 3 4)"), p(5, "(2 3 4)")]).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(group_order(3, &[p(3, "(0 1)"), p(3, "(0 1 2)")]).unwrap(), 6);
        assert_eq!(group_order(5, &[p(5, "(0 1 2 3 4)"), p(5, "(2 3 4)")]).unwrap(), 60);
        assert_eq!(group_order(4, &[Permutation::identity(4)]).unwrap(), 1);
        assert_eq!(group_order(4, &[]).unwrap(), 1);
    }

    #[test]
    fn chain_agrees_with_closure() {
        let cases: Vec<(usize, Vec<Permutation>)> = vec![
            (3, vec![p(3, "(0 1)"), p(3, "(0 1 2)")]),
            (5, vec![p(5, "(0 1 2 3 4)"), p(5, "(2 3 4)")]),
            (6, vec![p(6, "(0 1)(2 3)"), p(6, "(1 2 4)(3 5 0)")]),
            (7, vec![p(7, "(0 1 2 3 4 5 6)"), p(7, "(0 1)")]),
            (8, vec![p(8, "(0 1)(2 3)(4 5)(6 7)"), p(8, "(0 2)(1 3)"), p(8, "(0 4)(1 5)(2 6)(3 7)")]),
            (7, vec![p(7, "(0 1 2 3 4 5 6)"), p(7, "(1 2 4)(3 6 5)"), p(7, "(1 6)(2 3)")]),
        ];
        for (n, gens) in cases {
            let a = group_order(n, &gens).unwrap() as u128;
            let b = group_order_by_chain(n, &gens).unwrap();
            assert_eq!(a, b, "degree {n}");
        }
        assert_eq!(group_order_by_chain(9, &[p(9, "(0 1)"), p(9, "(0 1 2 3 4 5 6 7 8)")]).unwrap(), 362_880);
    }

    #[test]
    fn transitivity() {
        assert!(!is_transitive(&[p(4, "(0 1)(2 3)")], 4));
        assert!(is_transitive(&[p(4, "(0 1 2 3)")], 4));
    }

    #[test]
    fn solvability() {
        let s4 = sym(4).derived_series();
        assert_eq!(s4.orders, vec![24, 12, 4, 1]);
        assert_eq!(s4.derived_length(), Some(3));
        let a5 = alt5().derived_series();
        assert!(!a5.solvable);
        assert_eq!(a5.orders, vec![60]);
        assert_eq!(alt5().derived_subgroup().order(), 60);
        let c3 = is_solvable(3, &[p(3, "(0 1 2)")]).unwrap();
        assert!(c3.solvable);
        assert_eq!(c3.derived_length(), Some(1));
    }

    #[test]
    fn cycle_data() {
        let x = p(5, "(0 1)(2 3 4)");
        assert_eq!(x.cycle_type(), vec![2, 3]);
        assert_eq!(x.order(), 6);
        assert_eq!(Permutation::identity(5).cycle_type(), vec![1, 1, 1, 1, 1]);
        assert_eq!(Permutation::identity(5).order(), 1);
        assert_eq!(p(7, "(0 1 2 3 4 5 6)").cycle_type(), vec![7]);
        assert_eq!(p(7, "(0 1 2 3 4 5 6)").order(), 7);
        assert_eq!(x.to_string(), "(0 1)(2 3 4)");
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::parse_cycles(3, "(0 1)(1 2)").is_err());
    }

    #[test]
    fn subgroup_class_counts() {
        let classes = subgroup_classes(&alt5()).unwrap();
        let orders: Vec<u64> = classes.iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 5, 6, 10, 12, 60]);
        let total: usize = classes.iter().map(|c| c.class_size).sum();
        assert_eq!(total, 59);

        let c6 = PermGroup::generate(6, vec![p(6, "(0 1 2 3 4 5)")]).unwrap();
        let orders: Vec<u64> = subgroup_classes(&c6).unwrap().iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);

        let s4 = subgroup_classes(&sym(4)).unwrap();
        assert_eq!(s4.len(), 11);
        assert_eq!(s4.iter().map(|c| c.class_size).sum::<usize>(), 30);

        assert!(subgroup_classes(&sym(5)).is_err());
    }

    #[test]
    fn cores() {
        let a5 = alt5();
        for c in subgroup_classes(&a5).unwrap() {
            let k = core(&a5, &c.representative);
            if c.order() < 60 {
                assert_eq!(k.order(), 1);
            } else {
                assert_eq!(k.order(), 60);
            }
        }
        let s4 = sym(4);
        let v4 = PermGroup::generate(4, vec![p(4, "(0 1)(2 3)"), p(4, "(0 2)(1 3)")]).unwrap();
        assert_eq!(core(&s4, &v4).order(), 4);
        let a4 = s4.derived_subgroup();
        assert_eq!(core(&s4, &a4).order(), 12);
        let s3 = PermGroup::generate(4, vec![p(4, "(0 1)"), p(4, "(0 1 2)")]).unwrap();
        assert_eq!(core(&s4, &s3).order(), 1);
    }

    #[test]
    fn core_properties_over_all_classes() {
        for g in [sym(4), alt5()] {
            let classes = subgroup_classes(&g).unwrap();
            let normal: Vec<&PermGroup> = classes
                .iter()
                .map(|c| &c.representative)
                .filter(|h| h.is_normal_in(&g))
                .collect();
            for c in &classes {
                let f = &c.representative;
                let k = core(&g, f);
                assert!(k.is_normal_in(&g));
                assert!(k.is_subgroup_of(f));
                for n in &normal {
                    if n.is_subgroup_of(f) {
                        assert!(n.is_subgroup_of(&k));
                    }
                }
            }
        }
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<u32>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn random_groups_chain_matches_closure(a in perm_strategy(7), b in perm_strategy(7)) {
            let gens = vec![a, b];
            prop_assert_eq!(group_order(7, &gens).unwrap() as u128, group_order_by_chain(7, &gens).unwrap());
        }

        #[test]
        fn inverse_and_order(a in perm_strategy(9)) {
            prop_assert!(a.then(&a.inverse()).is_identity());
            prop_assert!(a.pow(a.order()).is_identity());
            let chain = StabilizerChain::new(9, std::slice::from_ref(&a)).unwrap();
            prop_assert_eq!(chain.order(), a.order() as u128);
            prop_assert!(chain.contains(&a.pow(3)));
        }
    }
}
