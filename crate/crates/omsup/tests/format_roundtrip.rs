//! Random automata survive a serialize → parse → serialize cycle unchanged.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use omsup::format::{parse_document, serialize_document, AutomatonDocument, Role};
use omsup::oracle::gen;

#[test]
fn random_documents_round_trip_byte_for_byte() {
    let seed = 0x20F0u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for index in 0..200 {
        let ab = gen::alphabet(rng.gen_range(1..=3), rng.gen_range(1..=3));
        let plant = gen::plant(&mut rng, &ab, 20, 0.3).with_name(format!("random-{index}"));
        let (automaton, role) = match rng.gen_range(0..4) {
            0 => (plant, Some(Role::Plant)),
            1 => (gen::sub_spec_star(&mut rng, &plant), Some(Role::Star)),
            2 => (gen::sub_spec_omega(&mut rng, &plant), Some(Role::Omega)),
            _ => (plant, None),
        };
        let doc = AutomatonDocument { automaton, role };

        let text = serialize_document(&doc);
        let parsed = parse_document(&text)
            .unwrap_or_else(|e| panic!("seed {seed}, instance {index}: reparse failed: {e}"));
        assert_eq!(
            parsed, doc,
            "seed {seed}, instance {index}: parse(serialize(doc)) changed the document"
        );
        assert_eq!(
            serialize_document(&parsed),
            text,
            "seed {seed}, instance {index}: serialization is not idempotent"
        );
    }
}
