//! Classification results against the expected table, member/oracle
//! agreement for the Cond recognizers, threshold validation, and the
//! definitional cross-checks.

use linfix::alphabet::Letter;
use linfix::classify::{
    self, classify, letter_set, validate_threshold, CondFamily, SemiextPlan,
};
use linfix::monoid::syntactic_monoid;
use linfix::oracle;
use linfix::samples::{self, Lang};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_words(
    rng: &mut ChaCha8Rng,
    k: usize,
    count: usize,
    max_len: usize,
) -> Vec<Vec<Letter>> {
    (0..count)
        .map(|_| {
            let n = rng.gen_range(0..=max_len);
            (0..n).map(|_| rng.gen_range(0..k)).collect()
        })
        .collect()
}

#[test]
fn classification_table_matches_expectations() {
    // (language, zg, aperiodic, extensible, semi-extensible)
    let expectations = [
        (samples::even_a(), true, false, false, false),
        (samples::ab_exact(), true, true, false, false),
        (samples::three_a_b_mod3(), true, false, false, false),
        (samples::c_then_d(), true, true, false, false),
        (samples::counted_c_then_d(), true, false, false, false),
        (samples::ab_or_triples(), true, true, false, true),
        (samples::aabb_or_heavy(), true, true, true, true),
        (samples::zero_or_two_a(), true, true, false, true),
        (samples::b_star_a(), false, true, false, false),
        (samples::a_any_a(), false, true, false, false),
        (samples::odd_a(), true, false, false, false),
        (samples::contains_a(), true, true, true, true),
        (samples::contains_a_and_b(), true, true, true, true),
    ];
    for (lang, zg, aperiodic, extensible, semi) in expectations {
        let r = classify(&lang.dfa).unwrap();
        assert_eq!(r.is_zg, zg, "{}: zg", lang.name);
        assert_eq!(r.is_aperiodic, aperiodic, "{}: aperiodic", lang.name);
        assert_eq!(r.is_extensible, extensible, "{}: extensible", lang.name);
        assert_eq!(r.is_semi_extensible_zg, semi, "{}: semi-extensible", lang.name);
        assert_eq!(r.threshold.is_some(), semi, "{}: threshold presence", lang.name);
        if let Some(p) = r.threshold {
            assert!(p >= 2);
            assert_eq!(p, (r.monoid_size + 1).max(2));
        }
        // Structural implications hold on every classified language.
        assert!(!(r.is_extensible && r.is_zg) || r.is_semi_extensible_zg, "{}", lang.name);
        assert!(!r.is_semi_extensible_zg || r.is_aperiodic, "{}", lang.name);
        assert!(!r.is_semi_extensible_zg || r.is_zg, "{}", lang.name);
    }
}

#[test]
fn heavy_language_classifies_semi_extensible() {
    // Kept separate: the monoid here is a few hundred elements.
    let lang = samples::heavy_or_ordered();
    let r = classify(&lang.dfa).unwrap();
    assert!(r.is_zg && r.is_aperiodic && r.is_extensible && r.is_semi_extensible_zg);
}

fn enum_c_words(letters: &[Letter], max_len: usize) -> Vec<Vec<Letter>> {
    let mut all: Vec<Vec<Letter>> = vec![vec![]];
    let mut layer: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &c in letters {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

#[test]
fn cond_member_agrees_with_reachability_oracle() {
    // Exhaustive on all subwords of length <= 8 for every language and
    // every non-empty set of non-neutral letters.
    for lang in [
        samples::ab_or_triples(),
        samples::aabb_or_heavy(),
        samples::heavy_or_ordered(),
        samples::zero_or_two_a(),
        samples::contains_a(),
        samples::contains_a_and_b(),
    ] {
        let plan = match lang.hand_threshold {
            Some(p) => SemiextPlan::with_threshold(&lang.dfa, p).unwrap(),
            None => SemiextPlan::from_dfa(&lang.dfa).unwrap(),
        };
        let neutral_mask = plan.neutral_mask();
        let nn = plan.family.nonneutral().to_vec();
        let max_len = if nn.len() >= 3 { 6 } else { 8 };
        for bits in 1u32..(1 << nn.len()) {
            let s: Vec<Letter> = nn
                .iter()
                .enumerate()
                .filter(|&(i, _)| bits & (1 << i) != 0)
                .map(|(_, &a)| a)
                .collect();
            let s_mask = letter_set(&s);
            let keep: Vec<Letter> = nn.iter().copied().filter(|&a| !s.contains(&a)).collect();
            for w in enum_c_words(&keep, max_len) {
                let got = plan.family.member_with_cap(s_mask, &w, max_len + 1);
                let want = oracle::cond_oracle(&lang.dfa, neutral_mask, s_mask, &w);
                assert_eq!(got, want, "{}: S={s:?} w={w:?}", lang.name);
            }
        }
    }
}

#[test]
fn hand_thresholds_validate_on_samples_and_are_monotone() {
    for lang in [samples::ab_or_triples(), samples::aabb_or_heavy(), samples::heavy_or_ordered()]
    {
        let p = lang.hand_threshold.unwrap();
        let family = family_of(&lang, p + 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0x7E57);
        let samples = random_words(&mut rng, lang.alphabet.len(), 500, 14);
        assert!(
            validate_threshold(&lang.dfa, &family, p, &samples),
            "{}: hand threshold fails",
            lang.name
        );
        // Validity is monotone in p on the same sample.
        assert!(
            validate_threshold(&lang.dfa, &family, p + 1, &samples),
            "{}: monotone step fails",
            lang.name
        );
        // The derived threshold works too.
        let derived = classify::threshold(&syntactic_monoid(&lang.dfa).unwrap()).unwrap();
        let family = family_of(&lang, derived);
        assert!(validate_threshold(&lang.dfa, &family, derived, &samples), "{}", lang.name);
    }
}

fn family_of(lang: &Lang, cap: usize) -> CondFamily {
    let m = syntactic_monoid(&lang.dfa).unwrap();
    CondFamily::build(&lang.dfa, &m.neutral_letters(), cap)
}

#[test]
fn failing_cond_means_no_factor_in_language() {
    // When the frequent set is non-empty and the rare subword fails the
    // recognizer, brute force confirms that no factor of the word belongs
    // to the language.
    let mut checked = 0;
    for lang in [samples::aabb_or_heavy(), samples::heavy_or_ordered()] {
        let p = lang.hand_threshold.unwrap();
        let plan = SemiextPlan::with_threshold(&lang.dfa, p).unwrap();
        let neutral_mask = plan.neutral_mask();
        let mut rng = ChaCha8Rng::seed_from_u64(0xFAC);
        let k = lang.alphabet.len();
        for _ in 0..600 {
            let n = rng.gen_range(1..=18);
            let u: Vec<Letter> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            let mut counts = vec![0usize; k];
            for &a in &u {
                counts[a] += 1;
            }
            let mut t = 0u32;
            for &a in plan.family.nonneutral() {
                if counts[a] >= p {
                    t |= 1 << a;
                }
            }
            if t == 0 {
                continue;
            }
            let erased = t | neutral_mask;
            let sub: Vec<Letter> =
                u.iter().copied().filter(|&a| erased & (1 << a) == 0).collect();
            if plan.family.member_with_cap(t, &sub, p) {
                continue;
            }
            checked += 1;
            let word = linfix::Word::new(u.clone());
            assert!(
                oracle::brute_enumerate(&lang.dfa, &word).is_empty(),
                "{}: failing Cond but a factor is in the language: {u:?}",
                lang.name
            );
        }
    }
    assert!(checked >= 200, "only {checked} failing-Cond samples seen");
}

#[test]
fn cond_is_monotone_under_extension() {
    // Extending a word (and possibly its frequent set) preserves Cond
    // membership.
    let lang = samples::heavy_or_ordered();
    let p = lang.hand_threshold.unwrap();
    let plan = SemiextPlan::with_threshold(&lang.dfa, p).unwrap();
    let neutral_mask = plan.neutral_mask();
    let k = lang.alphabet.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x90);
    for _ in 0..400 {
        let n = rng.gen_range(1..=14);
        let u: Vec<Letter> = (0..n).map(|_| rng.gen_range(0..k)).collect();
        let pre: Vec<Letter> = (0..rng.gen_range(0..=6)).map(|_| rng.gen_range(0..k)).collect();
        let post: Vec<Letter> = (0..rng.gen_range(0..=6)).map(|_| rng.gen_range(0..k)).collect();
        let ext: Vec<Letter> = pre.iter().chain(u.iter()).chain(post.iter()).copied().collect();

        let freq = |w: &[Letter]| -> u32 {
            let mut counts = vec![0usize; k];
            for &a in w {
                counts[a] += 1;
            }
            plan.family
                .nonneutral()
                .iter()
                .filter(|&&a| counts[a] >= p)
                .fold(0, |m, &a| m | (1 << a))
        };
        let t = freq(&u);
        let t_ext = freq(&ext);
        if t == 0 || t_ext & t != t {
            continue;
        }
        let sub = |w: &[Letter], t: u32| -> Vec<Letter> {
            w.iter().copied().filter(|&a| (t | neutral_mask) & (1 << a) == 0).collect()
        };
        if oracle::cond_oracle(&lang.dfa, neutral_mask, t, &sub(&u, t)) {
            assert!(
                oracle::cond_oracle(&lang.dfa, neutral_mask, t_ext, &sub(&ext, t_ext)),
                "extension lost Cond membership: {u:?} -> {ext:?}"
            );
        }
    }
}

#[test]
fn membership_transfer_check_separates_the_classes()  {
    // Semi-extensible languages admit no counterexample pair; the odd
    // counting language yields one immediately.
    let mut rng = ChaCha8Rng::seed_from_u64(0x3F);
    for lang in [samples::ab_or_triples(), samples::aabb_or_heavy()] {
        let p = lang.hand_threshold.unwrap();
        let m = syntactic_monoid(&lang.dfa).unwrap();
        let neutral = letter_set(&m.neutral_letters());
        let k = lang.alphabet.len();
        let pairs: Vec<(Vec<Letter>, Vec<Letter>)> = (0..10_000)
            .map(|_| {
                let nu = rng.gen_range(0..=12);
                let nv = rng.gen_range(0..=12);
                (
                    (0..nu).map(|_| rng.gen_range(0..k)).collect(),
                    (0..nv).map(|_| rng.gen_range(0..k)).collect(),
                )
            })
            .collect();
        assert!(
            oracle::crosscheck_definitions(&lang.dfa, neutral, p, &pairs),
            "{}: unexpected counterexample",
            lang.name
        );
    }

    // Odd number of a's: v = a is accepted, u = aaaa has a frequent a but
    // is rejected.
    let lang = samples::odd_a();
    let m = syntactic_monoid(&lang.dfa).unwrap();
    let neutral = letter_set(&m.neutral_letters());
    let pairs = vec![(vec![0, 0, 0, 0], vec![0])];
    let hit = oracle::find_transfer_counterexample(&lang.dfa, neutral, 2, &pairs);
    assert_eq!(hit, Some((vec![0, 0, 0, 0], vec![0])));

    // Extensible ZG languages satisfy the transfer for every sampled pair.
    let lang = samples::contains_a();
    let m = syntactic_monoid(&lang.dfa).unwrap();
    let neutral = letter_set(&m.neutral_letters());
    let pairs: Vec<(Vec<Letter>, Vec<Letter>)> = (0..4000)
        .map(|_| {
            let nu = rng.gen_range(0..=10);
            let nv = rng.gen_range(0..=10);
            (
                (0..nu).map(|_| rng.gen_range(0..2)).collect(),
                (0..nv).map(|_| rng.gen_range(0..2)).collect(),
            )
        })
        .collect();
    assert!(oracle::crosscheck_definitions(&lang.dfa, neutral, 3, &pairs));
}
