//! Word problem for graph products of cyclic groups.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::complex::hat::{HatGraph, HatVertex};
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Order};
use crate::word::{Letter, NormalForm, Word};

/// Default cap on the number of elements produced by [`GraphProduct::enumerate_ball`].
pub const DEFAULT_MAX_ELEMENTS: usize = 2_000_000;

/// The group W(Γ) together with its word-problem solver.
#[derive(Debug, Clone)]
pub struct GraphProduct {
    graph: LabeledGraph,
    presentation: u64,
}

impl GraphProduct {
    pub fn new(graph: LabeledGraph) -> Self {
        let presentation = graph.fingerprint();
        GraphProduct {
            graph,
            presentation,
        }
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    #[inline]
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.graph.adjacent(a, b)
    }

    /// Folds an exponent into the canonical range; 0 means the trivial letter.
    #[inline]
    pub fn fold(&self, gen: usize, exp: i64) -> i64 {
        match self.graph.order(gen) {
            Order::Finite(c) => exp.rem_euclid(c as i64),
            Order::Infinite => exp,
        }
    }

    fn letter_length(&self, l: Letter) -> u64 {
        match self.graph.order(l.gen) {
            Order::Finite(_) => 1,
            Order::Infinite => l.exp.unsigned_abs(),
        }
    }

    /// Length of an arbitrary word (not necessarily reduced).
    pub fn word_length(&self, w: &[Letter]) -> u64 {
        w.iter()
            .filter(|l| self.fold(l.gen, l.exp) != 0)
            .map(|l| self.letter_length(*l))
            .sum()
    }

    fn check_word(&self, w: &[Letter]) -> Result<()> {
        match w.iter().find(|l| l.gen >= self.graph.len()) {
            Some(l) => Err(Error::UnknownGenerator(format!("#{}", l.gen))),
            None => Ok(()),
        }
    }

    /// Appends a letter to a reduced word, keeping it reduced.
    fn push_reduced(&self, stack: &mut Vec<Letter>, letter: Letter) {
        let exp = self.fold(letter.gen, letter.exp);
        if exp == 0 {
            return;
        }
        for i in (0..stack.len()).rev() {
            let other = stack[i];
            if other.gen == letter.gen {
                let merged = self.fold(letter.gen, other.exp + exp);
                if merged == 0 {
                    stack.remove(i);
                } else {
                    stack[i].exp = merged;
                }
                return;
            }
            if !self.commute(other.gen, letter.gen) {
                break;
            }
        }
        stack.push(Letter::new(letter.gen, exp));
    }

    /// Applies the three rewriting moves until no shortening is possible.
    pub fn reduce(&self, w: &Word) -> Result<Word> {
        self.check_word(w.letters())?;
        let mut stack = Vec::with_capacity(w.len());
        for &l in w.letters() {
            self.push_reduced(&mut stack, l);
        }
        Ok(Word(stack))
    }

    /// Lexicographically least rearrangement of a reduced word under
    /// commutation moves.
    fn canonical_order(&self, letters: Vec<Letter>) -> Vec<Letter> {
        let n = letters.len();
        let mut blockers = vec![0usize; n];
        for i in 0..n {
            for j in 0..i {
                if !self.commute(letters[j].gen, letters[i].gen) {
                    blockers[i] += 1;
                }
            }
        }
        let mut used = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let pick = (0..n)
                .filter(|&i| !used[i] && blockers[i] == 0)
                .min_by_key(|&i| letters[i])
                .expect("a reduced word always has an available letter");
            used[pick] = true;
            out.push(letters[pick]);
            for i in pick + 1..n {
                if !used[i] && !self.commute(letters[pick].gen, letters[i].gen) {
                    blockers[i] -= 1;
                }
            }
        }
        out
    }

    fn finish(&self, reduced: Vec<Letter>) -> NormalForm {
        let letters = self.canonical_order(reduced);
        let length = letters.iter().map(|l| self.letter_length(*l)).sum();
        NormalForm {
            presentation: self.presentation,
            letters,
            length,
        }
    }

    pub fn normalize(&self, w: &Word) -> Result<NormalForm> {
        Ok(self.finish(self.reduce(w)?.0))
    }

    pub fn normalize_letters(&self, letters: &[Letter]) -> Result<NormalForm> {
        self.check_word(letters)?;
        let mut stack = Vec::with_capacity(letters.len());
        for &l in letters {
            self.push_reduced(&mut stack, l);
        }
        Ok(self.finish(stack))
    }

    pub fn identity(&self) -> NormalForm {
        self.finish(Vec::new())
    }

    /// The element represented by a single letter `gen^exp`.
    pub fn generator(&self, gen: usize, exp: i64) -> NormalForm {
        self.normalize_letters(&[Letter::new(gen, exp)])
            .expect("generator index in range")
    }

    fn check_same(&self, a: &NormalForm) -> Result<()> {
        if a.presentation == self.presentation {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn multiply(&self, a: &NormalForm, b: &NormalForm) -> Result<NormalForm> {
        self.check_same(a)?;
        self.check_same(b)?;
        Ok(self.mul(a, b))
    }

    /// Unchecked product; both arguments must come from this group.
    pub(crate) fn mul(&self, a: &NormalForm, b: &NormalForm) -> NormalForm {
        let mut stack = a.letters.clone();
        for &l in &b.letters {
            self.push_reduced(&mut stack, l);
        }
        self.finish(stack)
    }

    pub(crate) fn mul_letter(&self, a: &NormalForm, gen: usize, exp: i64) -> NormalForm {
        let mut stack = a.letters.clone();
        self.push_reduced(&mut stack, Letter::new(gen, exp));
        self.finish(stack)
    }

    pub fn invert(&self, a: &NormalForm) -> Result<NormalForm> {
        self.check_same(a)?;
        Ok(self.inv(a))
    }

    pub(crate) fn inv(&self, a: &NormalForm) -> NormalForm {
        let mut stack = Vec::with_capacity(a.letters.len());
        for l in a.letters.iter().rev() {
            self.push_reduced(&mut stack, Letter::new(l.gen, -l.exp));
        }
        self.finish(stack)
    }

    /// True iff both words represent the same element.
    pub fn equal(&self, w1: &Word, w2: &Word) -> Result<bool> {
        Ok(self.normalize(w1)? == self.normalize(w2)?)
    }

    pub fn length(&self, g: &NormalForm) -> u64 {
        g.length
    }

    /// Generators that some reduced word for `g` ends with.
    pub fn end_letters(&self, g: &NormalForm) -> BTreeSet<usize> {
        self.end_letter_positions(g)
            .into_iter()
            .map(|i| g.letters[i].gen)
            .collect()
    }

    /// Positions of letters that can be shuffled to the end of the word.
    fn end_letter_positions(&self, g: &NormalForm) -> Vec<usize> {
        let n = g.letters.len();
        (0..n)
            .filter(|&i| {
                g.letters[i + 1..]
                    .iter()
                    .all(|l| self.commute(l.gen, g.letters[i].gen))
            })
            .collect()
    }

    /// Exponent of the trailing `gen` letter of `g`, or 0 if `g` does not end with `gen`.
    pub fn tail_exponent(&self, g: &NormalForm, gen: usize) -> i64 {
        self.end_letter_positions(g)
            .into_iter()
            .find(|&i| g.letters[i].gen == gen)
            .map_or(0, |i| g.letters[i].exp)
    }

    /// Elements of the standard subset ⟨⟨ŝ⟩⟩: all of ⟨s⟩ for finite s,
    /// {1, s^ε} for an infinite s with sign ε.
    pub fn hat_elements(&self, h: HatVertex) -> Vec<NormalForm> {
        match self.graph.order(h.gen) {
            Order::Finite(c) => (0..c as i64).map(|k| self.generator(h.gen, k)).collect(),
            Order::Infinite => vec![self.identity(), self.generator(h.gen, h.sign as i64)],
        }
    }

    /// Hat vertices ŝ with max ℓ(g⟨⟨ŝ⟩⟩) = ℓ(g), found by enumerating each
    /// finite set g⟨⟨ŝ⟩⟩.
    pub fn desc_letters(&self, g: &NormalForm) -> Result<BTreeSet<HatVertex>> {
        self.check_same(g)?;
        let hat = HatGraph::new(&self.graph)?;
        Ok(hat
            .vertices()
            .iter()
            .copied()
            .filter(|&h| {
                self.hat_elements(h)
                    .iter()
                    .all(|q| self.mul(g, q).length <= g.length)
            })
            .collect())
    }

    /// All elements of length at most `radius`, sorted by length then letters.
    pub fn enumerate_ball(&self, radius: u64, max_elements: usize) -> Result<Vec<NormalForm>> {
        let steps: Vec<(usize, i64)> = (0..self.graph.len())
            .flat_map(|g| match self.graph.order(g) {
                Order::Finite(c) => (1..c as i64).map(|k| (g, k)).collect::<Vec<_>>(),
                Order::Infinite => vec![(g, 1), (g, -1)],
            })
            .collect();
        let mut all = vec![self.identity()];
        let mut layer = vec![self.identity()];
        for n in 0..radius {
            let mut next: HashSet<NormalForm> = HashSet::new();
            for x in &layer {
                for &(g, e) in &steps {
                    let y = self.mul_letter(x, g, e);
                    if y.length == n + 1 {
                        next.insert(y);
                    }
                }
            }
            if all.len() + next.len() > max_elements {
                return Err(Error::BudgetExceeded {
                    what: "ball elements",
                    limit: max_elements,
                });
            }
            let mut next: Vec<_> = next.into_iter().collect();
            next.sort();
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort_by(|a, b| a.shortlex_cmp(b));
        Ok(all)
    }

    /// Parses comma-separated `name^exp` tokens; the exponent defaults to 1.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split(',') {
            let token = token.trim();
            if token.is_empty() {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::MalformedWord(token.to_string()))?;
                    (n.trim(), e)
                }
                None => (token, 1),
            };
            let gen = self
                .graph
                .index_of(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            letters.push(Letter::new(gen, exp));
        }
        Ok(Word(letters))
    }

    /// Space-separated `name^exp` letters, `()` for the identity.
    pub fn format_letters(&self, letters: &[Letter]) -> String {
        if letters.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for (i, l) in letters.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(self.graph.name(l.gen));
            if l.exp != 1 {
                let _ = write!(out, "^{}", l.exp);
            }
        }
        out
    }

    pub fn format(&self, g: &NormalForm) -> String {
        self.format_letters(&g.letters)
    }
}
