//! Edge-path presentations of the fundamental group of an order complex and
//! a bounded Tietze simplifier.
//!
//! Deciding triviality of a finitely presented group is impossible in
//! general, so the simplifier only ever answers "trivial", "free of rank k"
//! or gives up.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::poset::Poset;

/// Letters are `±(g + 1)` for generator `g`.
pub type Word = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Simplified {
    Trivial,
    /// No relators remain: free of the given rank.
    Free(usize),
    Inconclusive(Presentation),
}

/// Presentation of π₁ of the order complex of a connected poset: one
/// generator per comparable pair outside a spanning tree, one relator per
/// 2-chain.
pub fn presentation(p: &Poset) -> Presentation {
    let n = p.len();
    let mut tree = vec![false; 0];
    let mut edge_index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edges = Vec::new();
    for y in 0..n {
        for x in p.down_set(y).ones() {
            if x != y {
                edge_index.insert((x, y), edges.len());
                edges.push((x, y));
            }
        }
    }
    tree.resize(edges.len(), false);
    if n > 0 {
        let mut seen = FixedBitSet::with_capacity(n);
        seen.insert(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let nbrs = p.lower_covers(x).iter().chain(p.upper_covers(x)).copied().collect::<Vec<_>>();
            for y in nbrs {
                if !seen.contains(y) {
                    seen.insert(y);
                    let key = if p.lt(x, y) { (x, y) } else { (y, x) };
                    tree[edge_index[&key]] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    let mut generator = vec![None; edges.len()];
    let mut generators = 0;
    for (e, g) in generator.iter_mut().enumerate() {
        if !tree[e] {
            *g = Some(generators as i32 + 1);
            generators += 1;
        }
    }
    let letter = |a: usize, b: usize| generator[edge_index[&(a, b)]];
    let mut relators = Vec::new();
    for &(a, b) in &edges {
        let mut above = p.up_set(b).clone();
        above.set(b, false);
        for c in above.ones() {
            let word: Word = [letter(a, b), letter(b, c), letter(a, c).map(|g| -g)]
                .into_iter()
                .flatten()
                .collect();
            relators.push(word);
        }
    }
    Presentation { generators, relators }
}

/// Applies free reduction and generator elimination for at most
/// `10 · |relators|` elimination steps.
pub fn simplify(pres: &Presentation) -> Simplified {
    const MAX_WORD: usize = 4096;
    let budget = 10 * pres.relators.len().max(1);
    let mut alive = vec![true; pres.generators];
    let mut relators: Vec<Word> = pres.relators.clone();
    let mut steps = 0;
    loop {
        for r in &mut relators {
            cyclically_reduce(r);
        }
        relators.retain(|r| !r.is_empty());
        relators.sort();
        relators.dedup();
        if alive.iter().all(|&a| !a) {
            return Simplified::Trivial;
        }
        if relators.is_empty() {
            return Simplified::Free(alive.iter().filter(|&&a| a).count());
        }
        if steps >= budget {
            break;
        }
        // shortest relator containing some generator exactly once
        let mut order: Vec<usize> = (0..relators.len()).collect();
        order.sort_by_key(|&i| relators[i].len());
        let pick = order.iter().find_map(|&i| {
            let r = &relators[i];
            r.iter().position(|&l| r.iter().filter(|&&m| m.abs() == l.abs()).count() == 1).map(|pos| (i, pos))
        });
        let Some((ri, pos)) = pick else { break };
        let r = relators.swap_remove(ri);
        let g = r[pos].abs();
        // r = u g^e v = 1  =>  g^e = u⁻¹ v⁻¹, rotate so g^e is first: g^e w = 1, g^e = w⁻¹
        let rotated: Word = r[pos..].iter().chain(&r[..pos]).copied().collect();
        let rest = &rotated[1..];
        let mut replacement: Word = rest.iter().rev().map(|&l| -l).collect();
        if rotated[0] < 0 {
            replacement = inverse(&replacement);
        }
        let inv = inverse(&replacement);
        for w in &mut relators {
            if !w.iter().any(|l| l.abs() == g) {
                continue;
            }
            let mut out = Vec::with_capacity(w.len());
            for &l in w.iter() {
                if l == g {
                    out.extend_from_slice(&replacement);
                } else if l == -g {
                    out.extend_from_slice(&inv);
                } else {
                    out.push(l);
                }
            }
            *w = out;
            if w.len() > MAX_WORD {
                return Simplified::Inconclusive(compact(&alive, &relators));
            }
        }
        alive[(g - 1) as usize] = false;
        steps += 1;
    }
    Simplified::Inconclusive(compact(&alive, &relators))
}

fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

fn cyclically_reduce(w: &mut Word) {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w.iter() {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    let (mut i, mut j) = (0, out.len());
    while j > i + 1 && out[i] == -out[j - 1] {
        i += 1;
        j -= 1;
    }
    *w = out[i..j].to_vec();
}

/// Renumbers surviving generators.
fn compact(alive: &[bool], relators: &[Word]) -> Presentation {
    let mut map = vec![0i32; alive.len()];
    let mut k = 0;
    for (g, &a) in alive.iter().enumerate() {
        if a {
            k += 1;
            map[g] = k;
        }
    }
    let relators = relators
        .iter()
        .map(|w| w.iter().map(|&l| l.signum() * map[(l.abs() - 1) as usize]).collect())
        .collect();
    Presentation { generators: k as usize, relators }
}
