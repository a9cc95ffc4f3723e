//! Orbifold group presentations and Todd–Coxeter coset enumeration.
//!
//! The presentation of an order set `(r_1, ..., r_m)` has one generator per
//! point, a torsion relator `x_i^{r_i}` for every finite order, and the long
//! relator `x_1 x_2 ... x_m`. Infinite orders get no torsion relator.
//!
//! Enumeration is HLT style: cosets are processed in definition order, every
//! relator is scanned and filled at each live coset, and coincidences are
//! resolved with a union-find queue. The result is deterministic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::signature::{Order, OrderSet};

pub const DEFAULT_MAX_COSETS: usize = 100_000;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Letter {
    pub generator: usize,
    /// `+1` or `-1`.
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Letter { generator, exponent }
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, exponent: -self.exponent }
    }

    /// Column of the coset table: `2g` for `x_g`, `2g + 1` for its inverse.
    fn column(self) -> usize {
        2 * self.generator + usize::from(self.exponent < 0)
    }
}

/// A word in the generators; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// `x_g^n` for any integer `n`.
    pub fn power(generator: usize, n: i64) -> Self {
        let e = if n >= 0 { 1 } else { -1 };
        Word(vec![Letter::new(generator, e); n.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Image of the word under generator images (right action, left to right).
    pub fn evaluate(&self, images: &[Permutation]) -> Permutation {
        let degree = images.first().map_or(0, Permutation::degree);
        let mut acc = Permutation::identity(degree);
        for l in &self.0 {
            let g = &images[l.generator];
            acc = if l.exponent > 0 { acc.then(g) } else { acc.then(&g.inverse()) };
        }
        acc
    }
}

/// `<x_1..x_m | x_i^{r_i} (r_i finite), x_1...x_m>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbifoldPresentation {
    pub generator_count: usize,
    /// `(generator, r_i)` for every finite order.
    pub torsion: Vec<(usize, u32)>,
    pub long_relator: Word,
}

impl OrbifoldPresentation {
    pub fn from_orders(r: &OrderSet) -> Self {
        let generator_count = r.len();
        let torsion = r
            .orders()
            .iter()
            .enumerate()
            .filter_map(|(i, o)| o.finite().map(|k| (i, k)))
            .collect();
        let long_relator = Word((0..generator_count).map(|g| Letter::new(g, 1)).collect());
        OrbifoldPresentation { generator_count, torsion, long_relator }
    }

    /// Torsion relators followed by the long relator.
    pub fn relators(&self) -> Vec<Word> {
        let mut out: Vec<Word> =
            self.torsion.iter().map(|&(g, k)| Word::power(g, i64::from(k))).collect();
        out.push(self.long_relator.clone());
        out
    }

    /// The order attached to each generator, as in the source order set.
    pub fn generator_orders(&self) -> Vec<Order> {
        (0..self.generator_count)
            .map(|g| {
                self.torsion
                    .iter()
                    .find(|&&(h, _)| h == g)
                    .map_or(Order::Inf, |&(_, k)| Order::Finite(k))
            })
            .collect()
    }
}

impl std::fmt::Display for OrbifoldPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = (0..self.generator_count).map(|g| format!("x{}", g + 1)).collect();
        let mut rels: Vec<String> =
            self.torsion.iter().map(|&(g, k)| format!("{}^{}", names[g], k)).collect();
        rels.push(names.concat());
        write!(f, "<{} | {}>", names.join(","), rels.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EnumerationStatus {
    Completed,
    /// The index was not established within the given number of cosets.
    Overflow(usize),
}

/// Result of a coset enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    generator_count: usize,
    /// `rows[c][2g]` is `c·x_g`, `rows[c][2g+1]` is `c·x_g^-1`. Only total when
    /// the enumeration completed.
    rows: Vec<Vec<Option<usize>>>,
    pub status: EnumerationStatus,
    /// Total cosets defined during the run, including those later merged.
    pub cosets_defined: usize,
}

impl CosetTable {
    pub fn coset_count(&self) -> usize {
        self.rows.len()
    }

    pub fn is_complete(&self) -> bool {
        self.status == EnumerationStatus::Completed
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn action(&self, coset: usize, letter: Letter) -> Option<usize> {
        self.rows[coset][letter.column()]
    }

    /// Permutation action of each generator on the cosets.
    pub fn perm_rep(&self) -> Result<Vec<Permutation>> {
        if !self.is_complete() {
            return Err(Error::usage("coset table is not complete"));
        }
        (0..self.generator_count)
            .map(|g| {
                let images = self
                    .rows
                    .iter()
                    .map(|r| r[2 * g].map(|c| c as u32).ok_or_else(|| Error::Consistency("undefined entry in completed table".into())))
                    .collect::<Result<Vec<u32>>>()?;
                Permutation::from_images(images)
            })
            .collect()
    }
}

const UNDEF: usize = usize::MAX;

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    max_cosets: usize,
    overflow: bool,
}

fn inv_col(c: usize) -> usize {
    c ^ 1
}

impl Enumerator {
    fn new(generator_count: usize, max_cosets: usize) -> Self {
        let cols = 2 * generator_count;
        Enumerator {
            cols,
            table: vec![vec![UNDEF; cols]],
            parent: vec![0],
            max_cosets,
            overflow: false,
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) {
        if self.table.len() >= self.max_cosets {
            self.overflow = true;
            return;
        }
        let n = self.table.len();
        self.table.push(vec![UNDEF; self.cols]);
        self.parent.push(n);
        self.table[c][x] = n;
        self.table[n][inv_col(x)] = c;
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = c;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, gone) = if a < b { (a, b) } else { (b, a) };
        self.parent[gone] = keep;
        queue.push(gone);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == UNDEF {
                    continue;
                }
                self.table[f][inv_col(x)] = UNDEF;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.table[e1][x] != UNDEF {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][inv_col(x)] != UNDEF {
                    let t = self.table[f1][inv_col(x)];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][inv_col(x)] = e1;
                }
            }
        }
    }

    /// Scans `word` at coset `c`, defining cosets as needed until it closes.
    fn scan_and_fill(&mut self, c: usize, word: &[usize]) {
        if word.is_empty() {
            return;
        }
        let mut f = c;
        let mut b = c;
        let mut i: isize = 0;
        let mut j: isize = word.len() as isize - 1;
        loop {
            while i <= j && self.table[f][word[i as usize]] != UNDEF {
                f = self.table[f][word[i as usize]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i && self.table[b][inv_col(word[j as usize])] != UNDEF {
                b = self.table[b][inv_col(word[j as usize])];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return;
            } else if i == j {
                let x = word[i as usize];
                self.table[f][x] = b;
                self.table[b][inv_col(x)] = f;
                return;
            } else {
                self.define(f, word[i as usize]);
                if self.overflow {
                    return;
                }
            }
        }
    }
}

fn columns(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| l.column()).collect()
}

/// Enumerates the cosets of the subgroup generated by `subgroup_gens`.
///
/// `max_cosets` bounds the total number of cosets ever defined; running out
/// yields [`EnumerationStatus::Overflow`], which means "index not established",
/// never "index infinite".
pub fn todd_coxeter(pres: &OrbifoldPresentation, subgroup_gens: &[Word], max_cosets: usize) -> CosetTable {
    let relators: Vec<Vec<usize>> = pres.relators().iter().map(columns).collect();
    let mut en = Enumerator::new(pres.generator_count, max_cosets.max(1));
    for w in subgroup_gens {
        en.scan_and_fill(0, &columns(w));
        if en.overflow {
            break;
        }
    }
    let mut c = 0;
    while !en.overflow && c < en.table.len() {
        for r in &relators {
            if !en.is_live(c) || en.overflow {
                break;
            }
            en.scan_and_fill(c, r);
        }
        if en.is_live(c) {
            for x in 0..en.cols {
                if en.overflow {
                    break;
                }
                if en.table[c][x] == UNDEF {
                    en.define(c, x);
                }
            }
        }
        c += 1;
    }
    let defined = en.table.len();
    let status = if en.overflow {
        EnumerationStatus::Overflow(max_cosets)
    } else {
        EnumerationStatus::Completed
    };
    // compact live cosets to 0..N-1 in definition order
    let live: Vec<usize> = (0..en.table.len()).filter(|&c| en.is_live(c)).collect();
    let mut new_index = vec![UNDEF; en.table.len()];
    for (k, &c) in live.iter().enumerate() {
        new_index[c] = k;
    }
    let rows = live
        .iter()
        .map(|&c| {
            en.table[c]
                .iter()
                .map(|&t| if t == UNDEF { None } else { Some(new_index[t]) }.filter(|&v| v != UNDEF))
                .collect()
        })
        .collect();
    CosetTable { generator_count: pres.generator_count, rows, status, cosets_defined: defined }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{is_transitive, PermGroup};
    use crate::signature::enumerate_elliptic;

    fn os(s: &str) -> OrderSet {
        OrderSet::parse(s).unwrap()
    }

    fn trivial_count(s: &str) -> usize {
        let t = todd_coxeter(&OrbifoldPresentation::from_orders(&os(s)), &[], DEFAULT_MAX_COSETS);
        assert!(t.is_complete(), "{s}");
        t.coset_count()
    }

    #[test]
    fn presentations() {
        let p = OrbifoldPresentation::from_orders(&os("2,3,5"));
        assert_eq!(p.to_string(), "<x1,x2,x3 | x1^2,x2^3,x3^5,x1x2x3>");
        let p = OrbifoldPresentation::from_orders(&os("inf,inf"));
        assert_eq!(p.to_string(), "<x1,x2 | x1x2>");
        let p = OrbifoldPresentation::from_orders(&os("2,2,inf"));
        assert_eq!(p.to_string(), "<x1,x2,x3 | x1^2,x2^2,x1x2x3>");
        assert_eq!(p.generator_orders(), vec![Order::Finite(2), Order::Finite(2), Order::Inf]);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(trivial_count("2,2,3"), 6);
        assert_eq!(trivial_count("2,3,5"), 60);
        assert_eq!(trivial_count("2,3,4"), 24);
        let p = OrbifoldPresentation::from_orders(&os("inf,inf"));
        let t = todd_coxeter(&p, &[Word::power(0, 3)], 1000);
        assert!(t.is_complete());
        assert_eq!(t.coset_count(), 3);
    }

    #[test]
    fn infinite_index_overflows() {
        let p = OrbifoldPresentation::from_orders(&os("3,3,3"));
        let t = todd_coxeter(&p, &[], 500);
        assert_eq!(t.status, EnumerationStatus::Overflow(500));
        assert!(t.perm_rep().is_err());
    }

    #[test]
    fn subgroup_index() {
        // index of <x1> (order 2) in the icosahedral group
        let p = OrbifoldPresentation::from_orders(&os("2,3,5"));
        let t = todd_coxeter(&p, &[Word::power(0, 1)], DEFAULT_MAX_COSETS);
        assert_eq!(t.coset_count(), 30);
        let t = todd_coxeter(&p, &[Word::power(2, 1)], DEFAULT_MAX_COSETS);
        assert_eq!(t.coset_count(), 12);
    }

    #[test]
    fn polygon_generator_is_a_cycle() {
        for k in 2..=9u32 {
            let p = OrbifoldPresentation::from_orders(&OrderSet::finite(&[k, k]).unwrap());
            let perms = todd_coxeter(&p, &[], 1000).perm_rep().unwrap();
            assert_eq!(perms[0].cycle_type(), vec![k as usize]);
        }
    }

    #[test]
    fn klein_four() {
        let p = OrbifoldPresentation::from_orders(&os("2,2,2"));
        let perms = todd_coxeter(&p, &[], 1000).perm_rep().unwrap();
        assert_eq!(perms.len(), 3);
        for a in &perms {
            assert_eq!(a.order(), 2);
            for b in &perms {
                assert_eq!(a.then(b), b.then(a));
            }
        }
        assert_eq!(PermGroup::generate(4, perms).unwrap().order(), 4);
    }

    #[test]
    fn regular_actions_satisfy_relators() {
        for r in enumerate_elliptic(7) {
            let p = OrbifoldPresentation::from_orders(&r);
            let t = todd_coxeter(&p, &[], DEFAULT_MAX_COSETS);
            let n = t.coset_count();
            assert_eq!(Some(n as u64), r.expected_group_order().unwrap().finite());
            let perms = t.perm_rep().unwrap();
            for rel in p.relators() {
                assert!(rel.evaluate(&perms).is_identity());
            }
            assert!(is_transitive(&perms, n));
            let g = PermGroup::generate(n, perms.clone()).unwrap();
            assert_eq!(g.order() as usize, n);
            // regular: no non-identity element fixes coset 0
            assert!(g.elements().iter().filter(|e| e.apply(0) == 0).count() == 1);
            // independent of the bound once complete
            let t2 = todd_coxeter(&p, &[], t.cosets_defined);
            assert_eq!(t2.coset_count(), n);
            assert_eq!(t2.perm_rep().unwrap(), perms);
        }
    }
}
