mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sentree::seq::deserialize_prefix;
use sentree::{build_tree, deserialize, linearize, serialize, Entry, Token, TreeSequence};

fn check_tree(levels: &[usize]) {
    let tree = build_tree(&sentence_with_levels(levels));
    let seq = serialize(&tree);
    let (n, internal, vacant) = link_counts(&tree);
    assert_eq!(seq.token_count(), n);
    assert_eq!(seq.itn_count(), internal);
    assert_eq!(seq.vac_count(), vacant);
    if n > 0 {
        assert_eq!(seq.len(), 3 * internal + 1);
        assert_eq!(vacant + n - 1, 2 * internal);
    }
    let back = deserialize(&seq).unwrap();
    assert!(back.same_structure(&tree));
    // Reconstructed depth is the level.
    let levels_back: Vec<f64> = back.levels().into_iter().map(|l| l as f64).collect();
    let depths: Vec<f64> = back.nodes().iter().map(|n| n.depth).collect();
    assert_eq!(depths, levels_back);
    assert_eq!(serialize(&back), seq);
    let rendered = seq.render().unwrap();
    assert_eq!(TreeSequence::parse(&rendered), seq);
}

#[test]
fn every_small_shape_roundtrips() {
    for n in 0..=8 {
        for shape in all_shapes(n) {
            check_tree(&shape.inorder_levels());
        }
    }
}

#[test]
fn large_random_shapes_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [1, 2, 100, 1_000, 10_000] {
        check_tree(&random_shape_levels(&mut rng, n));
    }
    // Degenerate chains.
    check_tree(&(0..10_000).collect::<Vec<_>>());
    check_tree(&(0..10_000).rev().collect::<Vec<_>>());
}

#[test]
fn random_sentences_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..2_000 {
        let s = random_sentence(&mut rng, 60);
        let seq = serialize(&build_tree(&s));
        let back = deserialize(&TreeSequence::parse(&seq.render().unwrap())).unwrap();
        assert_eq!(linearize(&back).tokens(), s.tokens());
    }
}

fn entry() -> impl Strategy<Value = Entry> {
    prop_oneof![
        3 => Just(Entry::Itn),
        2 => Just(Entry::Vac),
        4 => "[a-d]".prop_map(|t| Entry::Token(Token::new(t).unwrap())),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn deserialize_is_total_and_exact(entries in prop::collection::vec(entry(), 0..40)) {
        let seq = TreeSequence::new(entries);
        match deserialize(&seq) {
            Ok(tree) => prop_assert_eq!(serialize(&tree), seq.clone()),
            Err(e) => prop_assert!(e.position <= seq.len()),
        }
        let (prefix, err) = deserialize_prefix(&seq);
        prop_assert_eq!(err.is_none(), deserialize(&seq).is_ok());
        prop_assert!(prefix.len() <= seq.token_count());
    }

    #[test]
    fn render_parse_inverse(entries in prop::collection::vec(entry(), 0..40)) {
        let seq = TreeSequence::new(entries);
        let line = seq.render().unwrap();
        prop_assert_eq!(TreeSequence::parse(&line).render().unwrap(), line.clone());
        prop_assert_eq!(TreeSequence::parse(&line), seq);
    }
}

#[test]
fn mutated_valid_sequences_classify() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut ok = 0;
    for _ in 0..5_000 {
        let s = random_sentence(&mut rng, 12);
        let mut entries = serialize(&build_tree(&s)).into_entries();
        let pos = rng.gen_range(0..=entries.len());
        match rng.gen_range(0..3) {
            0 if pos < entries.len() => {
                entries.remove(pos);
            }
            1 => entries.insert(
                pos,
                if rng.gen_bool(0.5) {
                    Entry::Itn
                } else {
                    Entry::Vac
                },
            ),
            _ => {
                if entries.len() >= 2 {
                    let other = rng.gen_range(0..entries.len());
                    let pos = pos.min(entries.len() - 1);
                    entries.swap(pos, other);
                }
            }
        }
        let seq = TreeSequence::new(entries);
        if let Ok(tree) = deserialize(&seq) {
            assert_eq!(serialize(&tree), seq);
            ok += 1;
        }
    }
    assert!(ok > 0);
}
