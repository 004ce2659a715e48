//! Random instances for property tests and the self-test command.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::homology::SimplicialComplex;
use crate::matching::{self, Matching};
use crate::morse::{self, MorseFunction};
use crate::poset::Poset;
use crate::rational;

fn name(i: usize) -> String {
    format!("x{i:02}")
}

/// A random poset on `n` elements: each pair `i < j` of a random ordering is
/// related with probability `density`, then closed transitively.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Poset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut covers = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                covers.push((name(perm[i]), name(perm[j])));
            }
        }
    }
    Poset::new((0..n).map(name), covers).expect("edges follow a linear order")
}

/// A random graded poset with at most `max` elements: each element above
/// the bottom level covers a nonempty set of elements one level down.
pub fn random_graded_poset<R: Rng + ?Sized>(rng: &mut R, max: usize) -> Poset {
    let max = max.max(1);
    let levels = rng.gen_range(1..=4.min(max));
    let mut sizes = vec![1usize; levels];
    for _ in levels..rng.gen_range(levels..=max) {
        let l = rng.gen_range(0..levels);
        sizes[l] += 1;
    }
    let mut ids: Vec<Vec<String>> = Vec::new();
    let mut next = 0;
    for &s in &sizes {
        ids.push((next..next + s).map(name).collect());
        next += s;
    }
    let mut covers = Vec::new();
    for l in 1..levels {
        for x in &ids[l] {
            let below = &ids[l - 1];
            let k = rng.gen_range(1..=below.len().min(3));
            for w in below.choose_multiple(rng, k) {
                covers.push((w.clone(), x.clone()));
            }
        }
    }
    Poset::new(ids.concat(), covers).expect("levels are acyclic")
}

/// A random simplicial complex on `vertices` vertices built from up to
/// `facets` random simplices of dimension at most `max_dim`. When
/// `connected`, each new facet meets the earlier ones.
pub fn random_complex<R: Rng + ?Sized>(
    rng: &mut R,
    vertices: usize,
    facets: usize,
    max_dim: usize,
    connected: bool,
) -> SimplicialComplex {
    let vertices = vertices.max(1);
    let verts: Vec<String> = (0..vertices).map(|i| format!("{i}")).collect();
    let mut used: Vec<usize> = Vec::new();
    let mut out: Vec<Vec<String>> = Vec::new();
    for _ in 0..facets.max(1) {
        let size = rng.gen_range(1..=(max_dim + 1).min(vertices));
        let mut facet: Vec<usize> = (0..vertices).collect::<Vec<_>>().choose_multiple(rng, size).copied().collect();
        if connected && !used.is_empty() && !facet.iter().any(|v| used.contains(v)) {
            facet[0] = *used.choose(rng).expect("nonempty");
            facet.sort_unstable();
            facet.dedup();
        }
        used.extend(&facet);
        used.sort_unstable();
        used.dedup();
        out.push(facet.into_iter().map(|v| verts[v].clone()).collect());
    }
    SimplicialComplex::from_facets(out)
}

/// Face poset of a random complex with at most `max` simplices.
pub fn random_face_poset<R: Rng + ?Sized>(rng: &mut R, max: usize, connected: bool) -> Poset {
    loop {
        let v = rng.gen_range(2..=6);
        let f = rng.gen_range(1..=5);
        let k = random_complex(rng, v, f, 2, connected);
        if k.len() <= max {
            return k.face_poset().expect("nonempty complex");
        }
    }
}

/// A random two-wide poset with at most `max` elements: half the time the
/// face poset of a random complex, otherwise a rejection-sampled graded
/// poset.
pub fn random_two_wide_poset<R: Rng + ?Sized>(rng: &mut R, max: usize) -> Poset {
    if rng.gen_bool(0.5) {
        for _ in 0..200 {
            let p = random_graded_poset(rng, max);
            if p.is_two_wide().0 {
                return p;
            }
        }
    }
    random_face_poset(rng, max, false)
}

/// A random Morse function: starts from four times the height and moves
/// single values at random, keeping only moves that stay Morse.
pub fn random_morse_function<R: Rng + ?Sized>(rng: &mut R, p: Arc<Poset>) -> MorseFunction {
    let n = p.len();
    let top = 4 * (p.height().max(0) + 1);
    let mut values: Vec<i64> = (0..n).map(|x| 4 * p.height_of(x) as i64).collect();
    let build = |v: &[i64]| MorseFunction::from_indexed(Arc::clone(&p), v.iter().map(|&x| rational::int(x)).collect());
    for _ in 0..3 * n {
        let x = rng.gen_range(0..n);
        let old = values[x];
        values[x] = rng.gen_range(-1..=top);
        if !morse::is_morse(&build(&values)).0 {
            values[x] = old;
        }
    }
    build(&values)
}

/// A random Morse matching: covers are tried in random order and kept with
/// probability `keep` when they leave the matching acyclic.
pub fn random_morse_matching<R: Rng + ?Sized>(rng: &mut R, p: Arc<Poset>, keep: f64) -> Matching {
    let mut covers = p.covers();
    covers.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut used = vec![false; p.len()];
    for (a, b) in covers {
        if used[a] || used[b] || !rng.gen_bool(keep) {
            continue;
        }
        pairs.push((a, b));
        let m = Matching::from_indices(Arc::clone(&p), pairs.clone()).expect("disjoint covers");
        if matching::is_morse_matching(&m).0 {
            used[a] = true;
            used[b] = true;
        } else {
            pairs.pop();
        }
    }
    Matching::from_indices(p, pairs).expect("disjoint covers")
}
