//! Property tests for the algebraic invariants of the word and plat layers.

use proptest::prelude::*;

use platbraid::moves::enumerate_moves;
use platbraid::plat::{component_count, residual_cycles, traversal_map};
use platbraid::relations::{
    apply_relation, replay_rewrites, word_equal_bounded, RelationRule, WordEquality,
};
use platbraid::word::{BraidWord, GeneratorLetter, Sign, StrandCount};
use platbraid::{embed_e, internal_map, oracle_component_count, strand_deletion};

fn letter(k: u16) -> impl Strategy<Value = GeneratorLetter> {
    (1..=k, prop::bool::ANY)
        .prop_map(|(index, neg)| GeneratorLetter::new(index, if neg { Sign::Neg } else { Sign::Pos }))
}

fn word(k: u16, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(letter(k), 0..=max_len).prop_map(move |letters| {
        BraidWord::from_letters(StrandCount::new(k).unwrap(), letters).unwrap()
    })
}

fn any_word(max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2u16..=9).prop_flat_map(move |k| word(k, max_len))
}

fn even_word(max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::sample::select(vec![2u16, 4, 6, 8]).prop_flat_map(move |k| word(k, max_len))
}

proptest! {
    #[test]
    fn free_reduction_is_idempotent_and_reduced(w in any_word(12)) {
        let once = w.free_reduce();
        prop_assert!(once.len() <= w.len());
        prop_assert!(once.is_freely_reduced());
        prop_assert_eq!(once.free_reduce(), once);
    }

    #[test]
    fn word_times_inverse_reduces_to_identity(w in any_word(10)) {
        prop_assert!(w.compose(&w.invert()).unwrap().free_reduce().is_empty());
        prop_assert!(w.invert().compose(&w).unwrap().free_reduce().is_empty());
    }

    #[test]
    fn permutation_is_a_homomorphism(a in any_word(8), b in any_word(8)) {
        prop_assume!(a.k() == b.k());
        let composed = a.compose(&b).unwrap().permutation();
        prop_assert_eq!(composed, a.permutation().then(&b.permutation()).unwrap());
        prop_assert_eq!(a.invert().permutation(), a.permutation().inverse());
    }

    #[test]
    fn free_reduction_preserves_permutation_and_class(w in any_word(12)) {
        let reduced = w.free_reduce();
        prop_assert_eq!(w.permutation(), reduced.permutation());
        prop_assert_eq!(w.abelian_class(), reduced.abelian_class());
    }

    #[test]
    fn relations_preserve_permutation_and_class(w in any_word(10), pos in 0usize..10) {
        for rule in [RelationRule::FarCommutation, RelationRule::YangBaxter, RelationRule::SphereRelation] {
            if let Ok(out) = apply_relation(&w, rule, pos) {
                prop_assert_eq!(w.permutation(), out.permutation());
                prop_assert_eq!(w.abelian_class(), out.abelian_class());
            }
        }
    }

    #[test]
    fn embedding_round_trips(w in even_word(8)) {
        let n = w.k() / 2;
        let image = embed_e(&w).unwrap();
        let back = strand_deletion(&image, &[1, 2, n + 3, n + 4]).unwrap();
        prop_assert_eq!(back.free_reduce(), w.free_reduce());
        let p = image.permutation();
        for still in [1, 2, n + 3, n + 4] {
            prop_assert_eq!(p.apply(still), still);
        }
    }

    #[test]
    fn traversal_structure(w in even_word(10)) {
        let f = internal_map(&w).unwrap();
        prop_assert!(f.is_fixed_point_free_involution());
        let phi = traversal_map(&w).unwrap();
        let orbits = phi.cycles();
        prop_assert_eq!(orbits.len() % 2, 0);
        let kept: usize = residual_cycles(&w).unwrap().cycles().iter().map(|c| c.len()).sum();
        prop_assert_eq!(kept as u16, w.k() / 2);
    }

    #[test]
    fn counts_agree_between_routes(w in even_word(10)) {
        prop_assert_eq!(
            component_count(&w).unwrap(),
            oracle_component_count(&w).unwrap()
        );
        prop_assert_eq!(
            residual_cycles(&w).unwrap().len(),
            component_count(&w).unwrap()
        );
    }

    #[test]
    fn cycles_are_sign_blind(w in even_word(10), flips in prop::collection::vec(prop::bool::ANY, 10)) {
        let letters: Vec<GeneratorLetter> = w
            .letters()
            .iter()
            .zip(flips.iter().chain(std::iter::repeat(&false)))
            .map(|(l, &flip)| if flip { l.inverse() } else { *l })
            .collect();
        let flipped = BraidWord::from_letters(w.strands(), letters).unwrap();
        prop_assert_eq!(
            residual_cycles(&w).unwrap(),
            residual_cycles(&flipped).unwrap()
        );
    }

    #[test]
    fn bounded_equality_is_sound(w in word(4, 5), pos in 0usize..6) {
        // Build a word equal to w by construction, then check the engine's
        // certificate replays and respects the invariants.
        let mut other = w.clone();
        if let Ok(rewritten) = apply_relation(&other, RelationRule::YangBaxter, pos) {
            other = rewritten;
        }
        let verdict = word_equal_bounded(&w, &other, 3_000).unwrap();
        if let WordEquality::Equal(steps) = verdict {
            prop_assert_eq!(replay_rewrites(&w, &steps), Some(other.clone()));
            prop_assert_eq!(w.permutation(), other.permutation());
            prop_assert_eq!(w.abelian_class(), other.abelian_class());
        }
    }

    #[test]
    fn move_results_are_canonical(w in even_word(6)) {
        for app in enumerate_moves(&w, w.k() + 4).unwrap() {
            prop_assert!(app.after.is_freely_reduced());
            prop_assert_eq!(app.k_before(), w.k());
        }
    }
}
