//! Brute-force equality oracle: explores every word reachable by the three
//! rewriting moves (drop a trivial letter, merge neighbours with the same
//! generator, swap commuting neighbours). Two words are equal in the group
//! iff their closures meet. Independent of the normal-form code path.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Order};
use crate::word::{Letter, Word};

pub const DEFAULT_WORD_BUDGET: usize = 100_000;

/// Exponent as a letter value: residues mod c(s) for finite s.
fn letter_value(graph: &LabeledGraph, l: Letter) -> Letter {
    match graph.order(l.gen) {
        Order::Finite(c) => Letter::new(l.gen, l.exp.rem_euclid(c as i64)),
        Order::Infinite => l,
    }
}

fn single_moves(graph: &LabeledGraph, w: &[Letter]) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    for i in 0..w.len() {
        if w[i].exp == 0 {
            let mut v = w.to_vec();
            v.remove(i);
            out.push(v);
        }
    }
    for i in 0..w.len().saturating_sub(1) {
        let (a, b) = (w[i], w[i + 1]);
        if a.gen == b.gen {
            let mut v = w.to_vec();
            v[i] = letter_value(graph, Letter::new(a.gen, a.exp + b.exp));
            v.remove(i + 1);
            out.push(v);
        } else if graph.adjacent(a.gen, b.gen) {
            let mut v = w.to_vec();
            v.swap(i, i + 1);
            out.push(v);
        }
    }
    out
}

/// Every word reachable from `w` by the rewriting moves.
pub fn closure(graph: &LabeledGraph, w: &Word, budget: usize) -> Result<HashSet<Vec<Letter>>> {
    if let Some(l) = w.letters().iter().find(|l| l.gen >= graph.len()) {
        return Err(Error::UnknownGenerator(format!("#{}", l.gen)));
    }
    let start: Vec<Letter> = w.letters().iter().map(|&l| letter_value(graph, l)).collect();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for next in single_moves(graph, &cur) {
            if seen.insert(next.clone()) {
                if seen.len() > budget {
                    return Err(Error::OracleBudgetExhausted(budget));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// True iff the rewriting closures of `w1` and `w2` intersect.
pub fn oracle_equal(graph: &LabeledGraph, w1: &Word, w2: &Word, budget: usize) -> Result<bool> {
    let c1 = closure(graph, w1, budget)?;
    let c2 = closure(graph, w2, budget)?;
    Ok(c1.iter().any(|x| c2.contains(x)))
}

/// Minimum word length over the closure of `w`.
pub fn closure_min_length(graph: &LabeledGraph, w: &Word, budget: usize) -> Result<u64> {
    let c = closure(graph, w, budget)?;
    Ok(c.iter()
        .map(|v| {
            v.iter()
                .filter(|l| l.exp != 0)
                .map(|l| match graph.order(l.gen) {
                    Order::Finite(_) => 1,
                    Order::Infinite => l.exp.unsigned_abs(),
                })
                .sum()
        })
        .min()
        .unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn w(letters: &[(usize, i64)]) -> Word {
        letters.iter().map(|&(g, e)| Letter::new(g, e)).collect()
    }

    #[test]
    fn oracle_examples() {
        let z2 = parse_graph("s:inf; t:inf; edge s t").unwrap();
        assert!(oracle_equal(&z2, &w(&[(0, 1), (1, 1), (0, -1)]), &w(&[(1, 1)]), 1000).unwrap());
        assert!(!oracle_equal(&z2, &Word::empty(), &w(&[(0, 1)]), 1000).unwrap());
        let f2 = parse_graph("s:inf; t:inf").unwrap();
        assert!(!oracle_equal(&f2, &w(&[(0, 1), (1, 1)]), &w(&[(1, 1), (0, 1)]), 1000).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let z3 = parse_graph("a:inf; b:inf; c:inf; edge a b; edge b c; edge a c").unwrap();
        let long = w(&[(0, 1), (1, 1), (2, 1), (0, 1), (1, 1), (2, 1)]);
        assert_eq!(
            oracle_equal(&z3, &long, &Word::empty(), 5),
            Err(Error::OracleBudgetExhausted(5))
        );
    }

    #[test]
    fn min_length_over_closure() {
        let g = parse_graph("u:3; s:inf").unwrap();
        assert_eq!(closure_min_length(&g, &w(&[(0, 1), (0, 1)]), 100).unwrap(), 1);
        assert_eq!(closure_min_length(&g, &w(&[(1, 1), (1, -1)]), 100).unwrap(), 0);
    }
}
