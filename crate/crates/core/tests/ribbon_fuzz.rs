use skein_core::ribbon::fuzz_lemma;

#[test]
fn parity_identity_on_random_graphs() {
    for seed in [1, 2, 3] {
        let failures = fuzz_lemma(1000, seed, 6, 10);
        assert!(failures.is_empty(), "seed {seed}: {}", serde_json::to_string(&failures[0]).unwrap());
    }
}
