use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Reverse;

use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use super::frame::{Frame, Path, PathPoly};
use super::{FreeElem, Generator, Presentation};
use crate::error::Result;
use crate::scalars::Field;

/// Resource limits for completion and basis enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    pub max_rules: usize,
    pub max_degree: usize,
    pub max_steps: u64,
    pub max_basis: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_rules: 50_000,
            max_degree: 48,
            max_steps: 200_000_000,
            max_basis: 500_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule<E> {
    pub lhs: Path,
    pub rhs: PathPoly<E>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub pairs: u64,
    pub reductions: u64,
    pub rules_added: u64,
}

#[derive(Clone, Debug, Default)]
struct Trie {
    nodes: Vec<(BTreeMap<u16, usize>, Vec<usize>)>,
}

impl Trie {
    fn new() -> Self {
        Trie {
            nodes: alloc::vec![(BTreeMap::new(), Vec::new())],
        }
    }

    fn insert(&mut self, letters: &[u16], id: usize) {
        let mut node = 0;
        for &x in letters {
            node = match self.nodes[node].0.get(&x) {
                Some(&n) => n,
                None => {
                    self.nodes.push((BTreeMap::new(), Vec::new()));
                    let n = self.nodes.len() - 1;
                    self.nodes[node].0.insert(x, n);
                    n
                }
            };
        }
        self.nodes[node].1.push(id);
    }

    fn remove(&mut self, letters: &[u16], id: usize) {
        let mut node = 0;
        for &x in letters {
            node = self.nodes[node].0[&x];
        }
        self.nodes[node].1.retain(|&r| r != id);
    }
}

/// A rewriting system for a presentation, confluent when `complete`.
#[derive(Clone, Debug)]
pub struct RewriteSystem<F: Field> {
    pub field: F,
    pub frame: Frame,
    pub generators: Vec<Generator>,
    rules: Vec<Option<Rule<F::Elem>>>,
    trie: Trie,
    dead: Vec<bool>,
    pub complete: bool,
    /// Which cap stopped completion, if any.
    pub cap_tripped: Option<String>,
    pub stats: Stats,
    caps: Caps,
}

enum Hit {
    Zero,
    Rule(usize, usize),
    Normal,
}

/// Complete `pres` under degree-lexicographic order with the given
/// generator precedence. Hitting a cap yields a system flagged incomplete.
pub fn complete<F: Field>(
    f: &F,
    pres: &Presentation<F::Elem>,
    precedence: Option<&[String]>,
    caps: &Caps,
) -> Result<RewriteSystem<F>> {
    let frame = Frame::build(f, pres, precedence)?;
    let nobj = frame.num_objects();
    let mut sys = RewriteSystem {
        field: f.clone(),
        frame,
        generators: pres.generators.clone(),
        rules: Vec::new(),
        trie: Trie::new(),
        dead: alloc::vec![false; nobj],
        complete: false,
        cap_tripped: None,
        stats: Stats::default(),
        caps: *caps,
    };
    let mut pending: Vec<PathPoly<F::Elem>> = Vec::new();
    for rel in &pres.relations {
        pending.extend(sys.frame.frame_elem(f, &rel.elem));
    }
    // Smallest leading terms first.
    pending.sort_by(|a, b| b[0].0.cmp(&a[0].0));
    sys.run(pending);
    Ok(sys)
}

impl<F: Field> RewriteSystem<F> {
    fn run(&mut self, mut pending: Vec<PathPoly<F::Elem>>) {
        let mut pairs: BinaryHeap<Reverse<(usize, u64, usize, usize, usize)>> = BinaryHeap::new();
        let mut seq = 0u64;
        loop {
            while let Some(p) = pending.pop() {
                if self.over_budget() {
                    return;
                }
                let nf = self.reduce(p);
                if !nf.is_empty() {
                    self.insert(nf, &mut pending, &mut pairs, &mut seq);
                    if self.cap_tripped.is_some() {
                        return;
                    }
                }
            }
            let Some(Reverse((deg, _, a, b, k))) = pairs.pop() else {
                break;
            };
            if deg > self.caps.max_degree {
                self.cap_tripped = Some(format!("max_degree = {}", self.caps.max_degree));
                continue;
            }
            self.stats.pairs += 1;
            if let Some(s) = self.overlap(a, b, k) {
                pending.push(s);
            }
        }
        for id in 0..self.rules.len() {
            if let Some(rule) = self.rules[id].take() {
                let rhs = self.reduce(rule.rhs);
                self.rules[id] = Some(Rule { lhs: rule.lhs, rhs });
            }
        }
        if self.cap_tripped.is_none() {
            self.complete = true;
        }
    }

    fn over_budget(&mut self) -> bool {
        if self.stats.reductions > self.caps.max_steps {
            self.cap_tripped = Some(format!("max_steps = {}", self.caps.max_steps));
            return true;
        }
        false
    }

    fn insert(
        &mut self,
        poly: PathPoly<F::Elem>,
        pending: &mut Vec<PathPoly<F::Elem>>,
        pairs: &mut BinaryHeap<Reverse<(usize, u64, usize, usize, usize)>>,
        seq: &mut u64,
    ) {
        let f = self.field.clone();
        let inv = f.inv(&poly[0].1).expect("leading coefficient is nonzero");
        let minus_inv = f.neg(&inv);
        let lhs = poly[0].0.clone();
        let rhs: PathPoly<F::Elem> = poly[1..]
            .iter()
            .map(|(p, c)| (p.clone(), f.mul(c, &minus_inv)))
            .collect();
        self.stats.rules_added += 1;

        if lhs.letters.is_empty() {
            // e(o) = 0: the vertex dies and every rule is re-derived.
            self.dead[lhs.obj as usize] = true;
            for id in 0..self.rules.len() {
                if let Some(rule) = self.rules[id].take() {
                    self.trie.remove(&rule.lhs.letters, id);
                    pending.push(rule_poly(&f, rule));
                }
            }
            pairs.clear();
            return;
        }

        if self.rule_count() >= self.caps.max_rules {
            self.cap_tripped = Some(format!("max_rules = {}", self.caps.max_rules));
            return;
        }

        let id = self.rules.len();
        let mut stale_rhs = Vec::new();
        for other in 0..self.rules.len() {
            let Some(rule) = &self.rules[other] else { continue };
            if self.occurs(&lhs, &rule.lhs) {
                let rule = self.rules[other].take().expect("present");
                self.trie.remove(&rule.lhs.letters, other);
                pending.push(rule_poly(&f, rule));
            } else if rule.rhs.iter().any(|(p, _)| self.occurs(&lhs, p)) {
                stale_rhs.push(other);
            }
        }
        self.trie.insert(&lhs.letters, id);
        self.rules.push(Some(Rule { lhs, rhs }));
        for other in stale_rhs {
            let rule = self.rules[other].take().expect("present");
            let rhs = self.reduce(rule.rhs);
            self.rules[other] = Some(Rule { lhs: rule.lhs, rhs });
        }
        // The new rule's own right side may be reducible by older rules.
        let rule = self.rules[id].take().expect("present");
        let rhs = self.reduce(rule.rhs);
        self.rules[id] = Some(Rule { lhs: rule.lhs, rhs });

        let new = self.rules[id].as_ref().expect("present").lhs.letters.clone();
        for other in 0..self.rules.len() {
            let Some(rule) = &self.rules[other] else { continue };
            let old = &rule.lhs.letters;
            let max = new.len().min(old.len());
            for k in 1..max {
                if old[old.len() - k..] == new[..k] {
                    *seq += 1;
                    pairs.push(Reverse((old.len() + new.len() - k, *seq, other, id, k)));
                }
                if other != id && new[new.len() - k..] == old[..k] {
                    *seq += 1;
                    pairs.push(Reverse((old.len() + new.len() - k, *seq, id, other, k)));
                }
            }
        }
    }

    /// The overlap of `a`'s suffix with `b`'s prefix of length `k`.
    fn overlap(&self, a: usize, b: usize, k: usize) -> Option<PathPoly<F::Elem>> {
        let ra = self.rules[a].as_ref()?;
        let rb = self.rules[b].as_ref()?;
        let la = ra.lhs.letters.len();
        let prefix = &ra.lhs.letters[..la - k];
        let suffix = &rb.lhs.letters[k..];
        let mut word = prefix.to_vec();
        word.extend_from_slice(&rb.lhs.letters);
        let whole = Path {
            letters: word,
            obj: rb.lhs.obj,
        };
        let objs = self.frame.along(&whole);
        if objs[la] != ra.lhs.obj || objs.iter().any(|&o| self.dead[o as usize]) {
            return None;
        }
        let f = &self.field;
        let mut acc: BTreeMap<Path, F::Elem> = BTreeMap::new();
        for (p, c) in &ra.rhs {
            let mut letters = p.letters.clone();
            letters.extend_from_slice(suffix);
            add_term(f, &mut acc, Path { letters, obj: rb.lhs.obj }, c.clone());
        }
        for (p, c) in &rb.rhs {
            let mut letters = prefix.to_vec();
            letters.extend_from_slice(&p.letters);
            add_term(f, &mut acc, Path { letters, obj: p.obj }, f.neg(c));
        }
        let mut out: PathPoly<F::Elem> = acc.into_iter().collect();
        out.reverse();
        Some(out)
    }

    /// Does `sub` occur inside `path` with matching vertices?
    fn occurs(&self, sub: &Path, path: &Path) -> bool {
        let n = sub.letters.len();
        if n > path.letters.len() {
            return false;
        }
        let objs = self.frame.along(path);
        (0..=path.letters.len() - n)
            .any(|s| path.letters[s..s + n] == sub.letters[..] && objs[s + n] == sub.obj)
    }

    fn find(&self, path: &Path) -> Hit {
        let objs = self.frame.along(path);
        if objs.iter().any(|&o| self.dead[o as usize]) {
            return Hit::Zero;
        }
        let n = path.letters.len();
        for start in 0..n {
            let mut node = 0;
            for end in start..n {
                match self.trie.nodes[node].0.get(&path.letters[end]) {
                    Some(&next) => node = next,
                    None => break,
                }
                for &id in &self.trie.nodes[node].1 {
                    if let Some(rule) = &self.rules[id] {
                        if rule.lhs.obj == objs[end + 1] {
                            return Hit::Rule(start, id);
                        }
                    }
                }
            }
        }
        Hit::Normal
    }

    /// Every reducible position of `path`, for randomized strategies.
    fn find_all(&self, path: &Path) -> Vec<(usize, usize)> {
        let objs = self.frame.along(path);
        let n = path.letters.len();
        let mut out = Vec::new();
        for start in 0..n {
            let mut node = 0;
            for end in start..n {
                match self.trie.nodes[node].0.get(&path.letters[end]) {
                    Some(&next) => node = next,
                    None => break,
                }
                for &id in &self.trie.nodes[node].1 {
                    if let Some(rule) = &self.rules[id] {
                        if rule.lhs.obj == objs[end + 1] {
                            out.push((start, id));
                        }
                    }
                }
            }
        }
        out
    }

    fn rewrite_at<'a>(&'a self, path: &'a Path, start: usize, id: usize) -> impl Iterator<Item = (Path, &'a F::Elem)> + 'a {
        let rule = self.rules[id].as_ref().expect("live rule");
        let end = start + rule.lhs.letters.len();
        let prefix = &path.letters[..start];
        let suffix = &path.letters[end..];
        let obj = path.obj;
        rule.rhs.iter().map(move |(p, c)| {
            let mut letters = Vec::with_capacity(prefix.len() + p.letters.len() + suffix.len());
            letters.extend_from_slice(prefix);
            letters.extend_from_slice(&p.letters);
            letters.extend_from_slice(suffix);
            (Path { letters, obj: if suffix.is_empty() { p.obj } else { obj } }, c)
        })
    }

    fn reduce(&mut self, poly: PathPoly<F::Elem>) -> PathPoly<F::Elem> {
        let (out, steps) = self.nf_counted(poly);
        self.stats.reductions += steps;
        out
    }

    /// Normal form of a free-algebra element, as a sum of paths.
    pub fn normal_form(&self, elem: &FreeElem<F::Elem>) -> PathPoly<F::Elem> {
        let mut all = Vec::new();
        for block in self.frame.frame_elem(&self.field, elem) {
            all.extend(block);
        }
        self.nf_ref(all)
    }

    /// Normal form of a path polynomial, always rewriting the leading term
    /// at its leftmost reducible position.
    pub fn nf_ref(&self, poly: PathPoly<F::Elem>) -> PathPoly<F::Elem> {
        self.nf_counted(poly).0
    }

    fn nf_counted(&self, poly: PathPoly<F::Elem>) -> (PathPoly<F::Elem>, u64) {
        let f = &self.field;
        let mut work: BTreeMap<Path, F::Elem> = BTreeMap::new();
        for (p, c) in poly {
            add_term(f, &mut work, p, c);
        }
        let mut out = Vec::new();
        let mut steps = 0;
        while let Some((p, c)) = work.pop_last() {
            match self.find(&p) {
                Hit::Zero => {}
                Hit::Normal => out.push((p, c)),
                Hit::Rule(start, id) => {
                    steps += 1;
                    let terms: Vec<(Path, F::Elem)> = self
                        .rewrite_at(&p, start, id)
                        .map(|(q, a)| (q, f.mul(a, &c)))
                        .collect();
                    for (q, a) in terms {
                        add_term(f, &mut work, q, a);
                    }
                }
            }
        }
        (out, steps)
    }

    /// Reduce by applying a random applicable rule to a random reducible
    /// term until nothing applies. Agrees with [`Self::nf_ref`] exactly when
    /// the system is confluent on `poly`.
    pub fn nf_random<R: RngCore>(&self, poly: PathPoly<F::Elem>, rng: &mut R) -> PathPoly<F::Elem> {
        let f = &self.field;
        let mut work: BTreeMap<Path, F::Elem> = BTreeMap::new();
        for (p, c) in poly {
            add_term(f, &mut work, p, c);
        }
        loop {
            let mut reducible: Vec<(Path, Vec<(usize, usize)>)> = Vec::new();
            let mut zero = Vec::new();
            for p in work.keys() {
                if matches!(self.find(p), Hit::Zero) {
                    zero.push(p.clone());
                    continue;
                }
                let hits = self.find_all(p);
                if !hits.is_empty() {
                    reducible.push((p.clone(), hits));
                }
            }
            for p in zero {
                work.remove(&p);
            }
            if reducible.is_empty() {
                break;
            }
            let (p, hits) = &reducible[(rng.next_u64() % reducible.len() as u64) as usize];
            let (start, id) = hits[(rng.next_u64() % hits.len() as u64) as usize];
            let c = work.remove(p).expect("present");
            let terms: Vec<(Path, F::Elem)> = self
                .rewrite_at(p, start, id)
                .map(|(q, a)| (q, f.mul(a, &c)))
                .collect();
            for (q, a) in terms {
                add_term(f, &mut work, q, a);
            }
        }
        let mut out: PathPoly<F::Elem> = work.into_iter().collect();
        out.reverse();
        out
    }

    pub fn is_normal(&self, path: &Path) -> bool {
        matches!(self.find(path), Hit::Normal)
    }

    pub fn is_dead(&self, obj: u32) -> bool {
        self.dead[obj as usize]
    }

    pub fn rule_count(&self) -> usize {
        self.rules.iter().filter(|r| r.is_some()).count()
    }

    /// Live rules in order of their left sides.
    pub fn rules(&self) -> Vec<&Rule<F::Elem>> {
        let mut v: Vec<&Rule<F::Elem>> = self.rules.iter().flatten().collect();
        v.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        v
    }

    /// Vertices killed by the relations (`e(o) = 0`).
    pub fn dead_objects(&self) -> Vec<u32> {
        (0..self.dead.len() as u32).filter(|&o| self.dead[o as usize]).collect()
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    /// `word -> sum` lines, one per rule, plus `e -> 0` for dead vertices.
    pub fn dump_rules(&self) -> Vec<String> {
        let mut out = Vec::new();
        for o in self.dead_objects() {
            out.push(format!("{} -> 0", self.frame.path_label(&Path::empty(o))));
        }
        for rule in self.rules() {
            out.push(format!(
                "{} -> {}",
                self.frame.path_label(&rule.lhs),
                self.render_poly(&rule.rhs)
            ));
        }
        out
    }

    pub fn render_poly(&self, poly: &PathPoly<F::Elem>) -> String {
        if poly.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = poly
            .iter()
            .map(|(p, c)| format!("({}){}", self.field.render(c), self.frame.path_label(p)))
            .collect();
        parts.join(" + ")
    }
}

fn rule_poly<F: Field>(f: &F, rule: Rule<F::Elem>) -> PathPoly<F::Elem> {
    let mut out = alloc::vec![(rule.lhs, f.one())];
    out.extend(rule.rhs.into_iter().map(|(p, c)| (p, f.neg(&c))));
    out
}

pub(crate) fn add_term<F: Field>(f: &F, acc: &mut BTreeMap<Path, F::Elem>, p: Path, c: F::Elem) {
    match acc.get_mut(&p) {
        Some(a) => {
            *a = f.add(a, &c);
            if f.is_zero(a) {
                acc.remove(&p);
            }
        }
        None => {
            if !f.is_zero(&c) {
                acc.insert(p, c);
            }
        }
    }
}
