//! Coset enumeration over the trivial subgroup (Felsch strategy) and Tietze
//! simplification of presentations.
//!
//! Words are sequences of nonzero letters: `g + 1` stands for generator `g`
//! and `-(g + 1)` for its inverse.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type Word = Vec<i32>;

/// Free group presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

const NONE: u32 = u32::MAX;

#[inline]
fn col(letter: i32) -> usize {
    let g = (letter.unsigned_abs() - 1) as usize;
    if letter > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

#[inline]
fn inv_col(c: usize) -> usize {
    c ^ 1
}

/// Free reduction.
pub fn reduce(word: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(word: &[i32]) -> Word {
    let mut w = reduce(word);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

pub fn inverse(word: &[i32]) -> Word {
    word.iter().rev().map(|l| -l).collect()
}

/// A complete coset table for the trivial subgroup; coset 0 is the identity.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub generators: usize,
    /// `table[c * 2 * generators + col]`, columns `2g` (generator) and `2g + 1` (inverse).
    pub table: Vec<u32>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        if self.generators == 0 {
            // the trivial group has one coset and no columns
            return 1;
        }
        self.table.len() / (2 * self.generators)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn act(&self, c: usize, letter: i32) -> usize {
        self.table[c * 2 * self.generators + col(letter)] as usize
    }

    pub fn act_word(&self, mut c: usize, word: &[i32]) -> usize {
        for &l in word {
            c = self.act(c, l);
        }
        c
    }
}

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    /// relator cyclic conjugates (of relators and their inverses) grouped by first column
    by_first: Vec<Vec<Word>>,
    deductions: VecDeque<(u32, usize)>,
    limit: usize,
    live: usize,
}

impl Enumerator {
    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.ncols + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, d: u32) {
        self.table[c as usize * self.ncols + col] = d;
    }

    fn new_coset(&mut self) -> Result<u32> {
        if self.live >= self.limit {
            return Err(Error::PresentationTooLarge { limit: self.limit });
        }
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.table.extend(std::iter::repeat(NONE).take(self.ncols));
        self.live += 1;
        Ok(id)
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, col: usize) -> Result<()> {
        let d = self.new_coset()?;
        self.set(c, col, d);
        self.set(d, inv_col(col), c);
        self.deductions.push_back((c, col));
        Ok(())
    }

    fn process_deductions(&mut self) -> Result<()> {
        while let Some((c, x)) = self.deductions.pop_front() {
            if !self.is_live(c) {
                continue;
            }
            let rels = std::mem::take(&mut self.by_first[x]);
            for r in &rels {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, r)?;
            }
            self.by_first[x] = rels;
            let d = self.get(c, x);
            if d != NONE && self.is_live(c) {
                let d = self.rep(d);
                let y = inv_col(x);
                let rels = std::mem::take(&mut self.by_first[y]);
                for r in &rels {
                    if !self.is_live(d) {
                        break;
                    }
                    self.scan(d, r)?;
                }
                self.by_first[y] = rels;
            }
        }
        Ok(())
    }

    /// Scans `word` (as columns) from coset `c`, deducing a single missing
    /// entry or detecting a coincidence.
    fn scan(&mut self, c: u32, word: &[i32]) -> Result<()> {
        let len = word.len();
        let mut f = c;
        let mut i = 0;
        while i < len {
            let next = self.get(f, col(word[i]));
            if next == NONE {
                break;
            }
            f = next;
            i += 1;
        }
        if i == len {
            if f != c {
                self.coincidence(f, c)?;
            }
            return Ok(());
        }
        let mut b = c;
        let mut j = len;
        while j > i {
            let prev = self.get(b, inv_col(col(word[j - 1])));
            if prev == NONE {
                break;
            }
            b = prev;
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b)?;
        } else if j == i + 1 {
            let x = col(word[i]);
            self.set(f, x, b);
            self.set(b, inv_col(x), f);
            self.deductions.push_back((f, x));
        }
        Ok(())
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.live -= 1;
        queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) -> Result<()> {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.ncols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                let xi = inv_col(x);
                if self.get(f, xi) == e {
                    self.set(f, xi, NONE);
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let e1x = self.get(e1, x);
                if e1x != NONE {
                    self.merge(f1, e1x, &mut queue);
                } else {
                    let f1xi = self.get(f1, xi);
                    if f1xi != NONE {
                        self.merge(e1, f1xi, &mut queue);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, xi, e1);
                        self.deductions.push_back((e1, x));
                    }
                }
            }
        }
        Ok(())
    }

    /// Removes dead cosets, renumbering live ones in order.
    fn compact(&mut self) {
        let total = self.parent.len();
        let mut new_id = vec![NONE; total];
        let mut next = 0u32;
        for c in 0..total {
            if self.parent[c] == c as u32 {
                new_id[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..total {
            if new_id[c] == NONE {
                continue;
            }
            for x in 0..self.ncols {
                let d = self.table[c * self.ncols + x];
                table.push(if d == NONE {
                    NONE
                } else {
                    new_id[self.rep(d) as usize]
                });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
    }
}

/// Enumerates the cosets of the trivial subgroup, i.e. the elements of the
/// presented group, with at most `max_cosets` live cosets at any time.
pub fn enumerate(p: &Presentation, max_cosets: usize) -> Result<CosetTable> {
    let ncols = 2 * p.generators;
    for r in &p.relators {
        if r.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > p.generators) {
            return Err(Error::MalformedSpec("relator uses an undeclared generator".into()));
        }
    }
    let mut rels = BTreeSet::new();
    for r in &p.relators {
        let w = cyclic_reduce(r);
        if w.is_empty() {
            continue;
        }
        for base in [w.clone(), inverse(&w)] {
            for s in 0..base.len() {
                let mut c = base[s..].to_vec();
                c.extend_from_slice(&base[..s]);
                rels.insert(c);
            }
        }
    }
    let mut by_first = vec![Vec::new(); ncols];
    for r in rels {
        by_first[col(r[0])].push(r);
    }
    let mut e = Enumerator {
        ncols,
        table: Vec::new(),
        parent: Vec::new(),
        by_first,
        deductions: VecDeque::new(),
        limit: max_cosets.max(1),
        live: 0,
    };
    e.new_coset()?;
    // relators of length one are deduced only by scanning from the start
    let all: Vec<Word> = e.by_first.iter().flatten().cloned().collect();
    for r in &all {
        e.scan(0, r)?;
    }
    e.process_deductions()?;
    let mut c = 0usize;
    while c < e.parent.len() {
        if e.is_live(c as u32) {
            for x in 0..ncols {
                if !e.is_live(c as u32) {
                    break;
                }
                if e.get(c as u32, x) == NONE {
                    if e.parent.len() >= 2 * e.limit && e.live < e.parent.len() {
                        // reclaim dead rows; coset numbers shift down
                        let before: Vec<bool> = (0..c).map(|k| e.is_live(k as u32)).collect();
                        e.compact();
                        c = before.iter().filter(|&&l| l).count();
                    }
                    e.define(c as u32, x)?;
                    e.process_deductions()?;
                }
            }
        }
        c += 1;
    }
    e.compact();
    Ok(CosetTable {
        generators: p.generators,
        table: e.table,
    })
}

/// Result of Tietze simplification: a smaller presentation plus the image of
/// every original generator as a word in the new generators.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub presentation: Presentation,
    pub images: Vec<Word>,
}

/// Eliminates generators that appear in relators of length one or two, which
/// either kill them or identify them with another generator.
pub fn simplify(p: &Presentation) -> Simplified {
    let g = p.generators;
    // images[i] is a word in the original generators that survive
    let mut images: Vec<Word> = (0..g).map(|i| vec![i as i32 + 1]).collect();
    let mut alive = vec![true; g];
    let mut relators: Vec<Word> = p.relators.iter().map(|r| cyclic_reduce(r)).collect();
    loop {
        let mut changed = false;
        relators.retain(|r| !r.is_empty());
        let mut subst: Option<(usize, Word)> = None;
        for r in &relators {
            if r.len() == 1 {
                subst = Some(((r[0].unsigned_abs() - 1) as usize, Vec::new()));
                break;
            }
            if r.len() == 2 && r[0].abs() != r[1].abs() {
                // r0 r1 = 1, so the later generator is expressed by the earlier
                let (a, b) = if r[0].abs() > r[1].abs() { (r[0], r[1]) } else { (r[1], r[0]) };
                // a * b = 1 (up to cyclic order) so a = b^-1
                let target = (a.unsigned_abs() - 1) as usize;
                let w = if a > 0 { vec![-b] } else { vec![b] };
                subst = Some((target, w));
                break;
            }
        }
        if let Some((t, w)) = subst {
            let apply = |word: &[i32]| -> Word {
                let mut out = Vec::new();
                for &l in word {
                    if (l.unsigned_abs() - 1) as usize == t {
                        if l > 0 {
                            out.extend_from_slice(&w);
                        } else {
                            out.extend(inverse(&w));
                        }
                    } else {
                        out.push(l);
                    }
                }
                reduce(&out)
            };
            relators = relators.iter().map(|r| cyclic_reduce(&apply(r))).collect();
            images = images.iter().map(|im| apply(im)).collect();
            alive[t] = false;
            changed = true;
        }
        let set: BTreeSet<Word> = relators.iter().cloned().collect();
        relators = set.into_iter().collect();
        if !changed {
            break;
        }
    }
    // renumber surviving generators
    let mut new_index = vec![0i32; g];
    let mut k = 0;
    for i in 0..g {
        if alive[i] {
            k += 1;
            new_index[i] = k;
        }
    }
    let renumber = |w: &[i32]| -> Word {
        w.iter()
            .map(|&l| {
                let i = (l.unsigned_abs() - 1) as usize;
                l.signum() * new_index[i]
            })
            .collect()
    };
    Simplified {
        presentation: Presentation {
            generators: k as usize,
            relators: relators.iter().map(|r| renumber(r)).collect(),
        },
        images: images.iter().map(|w| renumber(w)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(g: usize, rels: &[&[i32]]) -> Presentation {
        Presentation {
            generators: g,
            relators: rels.iter().map(|r| r.to_vec()).collect(),
        }
    }

    #[test]
    fn cyclic_group() {
        let t = enumerate(&pres(1, &[&[1, 1, 1, 1, 1, 1]]), 100).unwrap();
        assert_eq!(t.len(), 6);
    }

    #[test]
    fn dihedral_eight() {
        let t = enumerate(&pres(2, &[&[1, 1, 1, 1], &[2, 2], &[1, 2, 1, 2]]), 100).unwrap();
        assert_eq!(t.len(), 8);
    }

    #[test]
    fn quaternion_and_trivial() {
        // <a, b | a^4, a^2 b^-2, b^-1 a b a>
        let q8 = pres(2, &[&[1, 1, 1, 1], &[1, 1, -2, -2], &[-2, 1, 2, 1]]);
        assert_eq!(enumerate(&q8, 100).unwrap().len(), 8);
        // <a, b | a b a^-1 b^-2, b a b^-1 a^-2> is trivial
        let triv = pres(2, &[&[1, 2, -1, -2, -2], &[2, 1, -2, -1, -1]]);
        assert_eq!(enumerate(&triv, 1000).unwrap().len(), 1);
    }

    #[test]
    fn cap_is_enforced() {
        let big = pres(1, &[&[1; 50]]);
        assert_eq!(
            enumerate(&big, 10).unwrap_err(),
            Error::PresentationTooLarge { limit: 10 }
        );
    }

    #[test]
    fn simplification_keeps_the_group() {
        // <a, b, c | c, a b^-1, a^3> is cyclic of order 3
        let p = pres(3, &[&[3], &[1, -2], &[1, 1, 1]]);
        let s = simplify(&p);
        assert_eq!(s.presentation.generators, 1);
        assert_eq!(enumerate(&s.presentation, 10).unwrap().len(), 3);
        assert!(s.images[2].is_empty());
        assert_eq!(s.images[1], vec![1]);
    }
}
