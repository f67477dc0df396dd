//! Differential tests for the constant-memory enumeration session: output
//! sets against brute force, incremental summaries against from-scratch
//! recomputation, limits against the reference sweep, and the session
//! contract under updates.

use std::collections::BTreeSet;

use linfix::alphabet::{Infix, Word};
use linfix::classify::SemiextPlan;
use linfix::occlist::LetterIndex;
use linfix::oracle;
use linfix::samples::{self, Lang};
use linfix::semiext::{EnumSession, SessionError, SessionOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn plan_for(lang: &Lang) -> SemiextPlan {
    match lang.hand_threshold {
        Some(p) => SemiextPlan::with_threshold(&lang.dfa, p).unwrap(),
        None => SemiextPlan::from_dfa(&lang.dfa).unwrap(),
    }
}

fn collect(index: &LetterIndex, plan: &SemiextPlan) -> Vec<Infix> {
    let mut s = EnumSession::start(index, plan);
    let mut out = Vec::new();
    while let Some(x) = s.next(index).unwrap() {
        out.push(x);
    }
    out
}

fn random_word(rng: &mut ChaCha8Rng, k: usize, n: usize) -> Word {
    Word::new((0..n).map(|_| rng.gen_range(0..k)).collect())
}

#[test]
fn output_set_equals_brute_force_with_interleaved_updates() {
    for lang in samples::semiext_catalog() {
        let plan = plan_for(&lang);
        let k = lang.alphabet.len();
        let mut rng = ChaCha8Rng::seed_from_u64(0xABBA);
        for trial in 0..60 {
            let n = rng.gen_range(1..=40);
            let mut index = LetterIndex::build_over(random_word(&mut rng, k, n), k);
            for round in 0..6 {
                let got = collect(&index, &plan);
                let got_set: BTreeSet<Infix> = got.iter().copied().collect();
                assert_eq!(got.len(), got_set.len(), "{}: duplicate outputs", lang.name);
                let want = oracle::brute_enumerate(&lang.dfa, index.word());
                assert_eq!(
                    got_set,
                    want,
                    "{} trial {trial} round {round} word {:?}",
                    lang.name,
                    index.word().letters()
                );
                for _ in 0..3 {
                    let pos = rng.gen_range(1..=n);
                    let a = rng.gen_range(0..k);
                    index.apply_substitution(pos, a);
                }
            }
        }
    }
}

#[test]
fn limit_trace_matches_reference_on_marker_word() {
    // Sixteen-letter word over {a, b, c} with no neutral letters; the
    // first two limits land at 9 and 14 with threshold 5.
    let lang = samples::heavy_or_ordered();
    let plan = plan_for(&lang);
    let word = Word::new(lang.alphabet.intern("abbbaaaaccccbcaa").unwrap());
    let index = LetterIndex::build_over(word, lang.alphabet.len());
    let mut s = EnumSession::start_with(
        &index,
        &plan,
        SessionOptions { record_limits: true, verify_outputs: true },
    );
    while s.next(&index).unwrap().is_some() {}
    let limits = s.limits();
    assert!(limits.len() >= 2, "expected at least two limits, got {limits:?}");
    assert_eq!(limits[0], (1, 9));
    assert_eq!(limits[1], (2, 14));

    // The full trace agrees with the from-scratch reference.
    let want = oracle::limits_oracle(&lang.dfa, &plan.family, index.word(), plan.p);
    assert_eq!(limits, &want[..]);
}

#[test]
fn limits_match_oracle_on_random_words() {
    for lang in [samples::ab_or_triples(), samples::aabb_or_heavy(), samples::zero_or_two_a()] {
        let plan = plan_for(&lang);
        let k = lang.alphabet.len();
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        for _ in 0..120 {
            let n = rng.gen_range(1..=36);
            let index = LetterIndex::build_over(random_word(&mut rng, k, n), k);
            let mut s = EnumSession::start_with(
                &index,
                &plan,
                SessionOptions { record_limits: true, verify_outputs: true },
            );
            while s.next(&index).unwrap().is_some() {}
            let want = oracle::limits_oracle(&lang.dfa, &plan.family, index.word(), plan.p);
            assert_eq!(s.limits(), &want[..], "word {:?}", index.word().letters());
        }
    }
}

#[test]
fn incremental_summaries_equal_recomputation() {
    // After every emitted window the right information equals the oracle
    // at the current endpoint; after every completed round the limit
    // summaries equal the oracles at the recorded limit.
    for lang in [samples::ab_or_triples(), samples::aabb_or_heavy(), samples::heavy_or_ordered()] {
        let plan = plan_for(&lang);
        let k = lang.alphabet.len();
        let nn = plan.family.nonneutral().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(0xFEED);
        for _ in 0..40 {
            let n = rng.gen_range(1..=30);
            let index = LetterIndex::build_over(random_word(&mut rng, k, n), k);
            let w = index.word().clone();
            let mut s = EnumSession::start(&index, &plan);
            let mut last_limit_seen = 0usize;
            while let Some(_) = s.next(&index).unwrap() {
                let probe = s.debug_probe();
                if probe.sweeping && probe.r >= 1 {
                    let want = oracle::ri_oracle(&w, probe.r, plan.p, &nn);
                    assert_eq!(probe.ri, want, "ri at r={} of {:?}", probe.r, w.letters());
                }
                if probe.prev_limit != last_limit_seen && probe.prev_limit > 0 {
                    last_limit_seen = probe.prev_limit;
                    let want_ri = oracle::ri_oracle(&w, probe.prev_limit, plan.p, &nn);
                    assert_eq!(probe.ri_limit, want_ri, "ri at limit {}", probe.prev_limit);
                    let want_li =
                        oracle::li_oracle(&w, probe.r1, probe.prev_limit, plan.p, &nn);
                    assert_eq!(probe.li_limit, want_li, "li at limit {}", probe.prev_limit);
                }
            }
        }
    }
}

#[test]
fn sessions_are_read_only_and_updates_stale_them() {
    let lang = samples::ab_or_triples();
    let plan = plan_for(&lang);
    let k = lang.alphabet.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0xDEAD);
    for _ in 0..100 {
        let n = rng.gen_range(4..=60);
        let mut index = LetterIndex::build_over(random_word(&mut rng, k, n), k);
        let before = index.checksum();

        // Abort a session midway.
        let mut s = EnumSession::start(&index, &plan);
        for _ in 0..rng.gen_range(0..8) {
            if s.next(&index).unwrap().is_none() {
                break;
            }
        }
        assert_eq!(index.checksum(), before, "session wrote to the index");

        // Apply an update; the aborted session must fail fast, and a fresh
        // session sees the updated word.
        let pos = rng.gen_range(1..=n);
        let a = rng.gen_range(0..k);
        index.apply_substitution(pos, a);
        assert_eq!(s.next(&index), Err(SessionError::Stale));

        let got: BTreeSet<Infix> = collect(&index, &plan).into_iter().collect();
        assert_eq!(got, oracle::brute_enumerate(&lang.dfa, index.word()));
    }
}

#[test]
fn session_memory_is_constant_and_next_never_grows_it() {
    let lang = samples::aabb_or_heavy();
    let plan = plan_for(&lang);
    let k = lang.alphabet.len();
    let mut cells_by_n = Vec::new();
    for n in [64usize, 1024, 8192] {
        let word = Word::new((0..n).map(|i| [0, 2, 1, 2][i % 4]).collect());
        let index = LetterIndex::build_over(word, k);
        let mut s = EnumSession::start(&index, &plan);
        let initial = s.cells();
        let mut outputs = 0;
        while let Some(_) = s.next(&index).unwrap() {
            assert_eq!(s.cells(), initial, "session memory changed during next()");
            outputs += 1;
            if outputs > 5_000 {
                break;
            }
        }
        cells_by_n.push(initial);
    }
    assert_eq!(cells_by_n[0], cells_by_n[1]);
    assert_eq!(cells_by_n[1], cells_by_n[2]);
}
