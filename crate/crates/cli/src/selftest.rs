//! Random-instance checks behind the `selftest` subcommand. Each instance
//! gets its own seed drawn up front, so the outcome does not depend on the
//! number of worker threads.

use std::collections::BTreeMap;
use std::sync::Arc;

use morseposet::homology;
use morseposet::matching;
use morseposet::morse;
use morseposet::random;
use morseposet::reduction;
use morseposet::verify::{self, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const MAX_ELEMENTS: usize = 20;

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub checks: BTreeMap<&'static str, usize>,
    pub failures: Vec<String>,
}

#[derive(Default)]
struct Tally {
    checks: BTreeMap<&'static str, usize>,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, name: &'static str, instance: usize, ok: bool) {
        *self.checks.entry(name).or_default() += 1;
        if !ok {
            self.failures.push(format!("{name} failed on instance {instance}"));
        }
    }
}

fn instance(k: usize, seed: u64, t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let p = Arc::new(random::random_two_wide_poset(&mut rng, MAX_ELEMENTS));
    let f = random::random_morse_function(&mut rng, p);
    t.check("exclusion", k, morse::satisfies_exclusion(&f).is_ok_and(|r| r.0));

    let g = Arc::new(random::random_graded_poset(&mut rng, MAX_ELEMENTS));
    let keep = rng.gen_range(0.2..0.9);
    let m = random::random_morse_matching(&mut rng, g, keep);
    let back = morse::function_from_matching(&m).and_then(|f| morse::matching_from_function(&f));
    t.check("round_trip", k, back.is_ok_and(|b| b == m));

    let q = Arc::new(random::random_face_poset(&mut rng, MAX_ELEMENTS, true));
    let start = random::random_morse_matching(&mut rng, q.clone(), 0.3);
    match matching::optimize(&start) {
        Ok((opt, _)) => {
            let holds = [verify::morse_inequalities(&opt), verify::pitcher_inequalities(&opt)]
                .iter()
                .all(|r| r.verdict != Verdict::Violated);
            t.check("inequalities", k, holds);
        }
        Err(_) => t.check("inequalities", k, false),
    }

    let core = reduction::core(&q).to_poset();
    let same = homology::poset_homology(&core, false).same_groups(&homology::poset_homology(&q, false));
    t.check("core_homology", k, same);
}

pub fn run(rng: &mut ChaCha8Rng, count: usize, jobs: usize) -> Summary {
    let seeds: Vec<u64> = (0..count).map(|_| rng.gen()).collect();
    let chunk = count.div_ceil(jobs).max(1);
    let tallies: Vec<Tally> = std::thread::scope(|s| {
        let handles: Vec<_> = seeds
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                s.spawn(move || {
                    let mut t = Tally::default();
                    for (i, &seed) in part.iter().enumerate() {
                        instance(c * chunk + i, seed, &mut t);
                    }
                    t
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut out = Summary { instances: count, ..Summary::default() };
    for t in tallies {
        for (name, n) in t.checks {
            *out.checks.entry(name).or_default() += n;
        }
        out.failures.extend(t.failures);
    }
    out
}
