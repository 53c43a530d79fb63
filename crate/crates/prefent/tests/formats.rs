use prefent::format::{parse_klm, parse_mak, parse_model, parse_premises, parse_table, premises_text, write_klm, write_mak, write_table, ModelFile};
use prefent_core::gen::{gen_klm, gen_mak, GenSpec, KlmTarget, MakTarget};
use prefent_core::translate::tabulate;
use proptest::prelude::*;

fn spec(seed: u64, vocab_size: usize) -> GenSpec {
    GenSpec { seed, vocab_size, pref_density: (0.0, 1.0), ..GenSpec::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn klm_files_round_trip(seed in any::<u64>(), n in 1usize..=3) {
        let m = gen_klm(&spec(seed, n)).unwrap();
        let text = write_klm(&m);
        prop_assert_eq!(parse_klm(&text, None).unwrap(), m.clone());
        prop_assert_eq!(parse_model(&text, None).unwrap(), ModelFile::Klm(m));
    }

    #[test]
    fn mak_files_round_trip(seed in any::<u64>(), target in 0usize..3) {
        let mak = [MakTarget::Raw, MakTarget::Supra, MakTarget::Classical][target];
        let m = gen_mak(&GenSpec { mak, ..spec(seed, 2) }).unwrap();
        let text = write_mak(&m);
        prop_assert_eq!(parse_mak(&text, None).unwrap(), m.clone());
        prop_assert_eq!(parse_model(&text, None).unwrap(), ModelFile::Mak(m));
    }

    #[test]
    fn tables_round_trip(seed in any::<u64>()) {
        let t = tabulate(&gen_klm(&GenSpec { klm: KlmTarget::Any, ..spec(seed, 2) }).unwrap()).unwrap();
        prop_assert_eq!(parse_table(&write_table(&t), None).unwrap(), t);
    }

    #[test]
    fn premise_text_round_trips(mask in any::<u16>()) {
        let v = prefent_core::Vocab::new(["p", "q"]).unwrap();
        let x = prefent_core::FormulaSet::from_classes(
            &v,
            (0..16u64).filter(|c| mask >> c & 1 == 1).map(prefent_core::SemFormula),
        );
        prop_assert_eq!(parse_premises(&premises_text(&x, &v), &v).unwrap(), x);
    }
}

#[test]
fn size_cap_is_enforced_at_parse_time() {
    let text = "vocab p q r s\nstate a sat \"p\"\n";
    assert!(parse_model(text, None).is_ok());
    assert!(parse_model(text, Some(1 << 10)).is_err());
}
