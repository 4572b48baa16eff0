mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sentree::{build_tree, check_spectrum_laws, layer_spectra, linearize};

fn check(levels: &[usize]) {
    let tree = build_tree(&sentence_with_levels(levels));
    let spectra = layer_spectra(&tree).unwrap();
    let report = check_spectrum_laws(&spectra);
    assert!(report.all_pass(), "{levels:?}: {:?}", report.failures);

    let n = tree.len();
    assert_eq!(spectra.len(), tree.height());
    let first = &spectra[0];
    assert_eq!(first.revealed_count, 1);
    assert_eq!(
        (first.revealed[0].range_low, first.revealed[0].range_high),
        (0, n - 1)
    );

    let last = spectra.last().unwrap();
    assert_eq!(last.revealed_count, n);
    for node in &last.revealed {
        assert_eq!(node.range_low, node.final_position);
        assert_eq!(node.range_high, node.final_position);
    }
    let tokens: Vec<_> = last.revealed.iter().map(|r| r.token.clone()).collect();
    assert_eq!(&tokens[..], linearize(&tree).tokens());
}

#[test]
fn all_shapes_up_to_eight_nodes() {
    let mut count = 0;
    for n in 1..=8 {
        for shape in all_shapes(n) {
            check(&shape.inorder_levels());
            count += 1;
        }
    }
    // Catalan numbers 1..=8 sum to 2055.
    assert_eq!(count, 2055);
}

#[test]
fn random_trees_up_to_a_thousand_nodes() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let n = rng.gen_range(1..=1_000);
        check(&random_shape_levels(&mut rng, n));
    }
}

#[test]
fn trees_from_random_sentences() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..500 {
        let s = random_sentence(&mut rng, 80);
        if s.is_empty() {
            continue;
        }
        let report = check_spectrum_laws(&layer_spectra(&build_tree(&s)).unwrap());
        assert!(report.all_pass(), "{:?}", report.failures);
    }
}
