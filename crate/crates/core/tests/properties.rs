mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(config(0x11))]
    #[test]
    fn contraction_obeys_leibniz(case in leibniz_case()) { leibniz(case)?; }
}

proptest! {
    #![proptest_config(config(0x12))]
    #[test]
    fn contractions_commute(case in commutation_case()) { commutation(case)?; }
}

proptest! {
    #![proptest_config(config(0x13))]
    #[test]
    fn kernel_vectors_are_annihilated(m in kernel_case()) { kernel(m)?; }
}

proptest! {
    #![proptest_config(config(0x14))]
    #[test]
    fn signed_minors_annihilate_columns(m in minor_case()) { minor_annihilation(m)?; }
}

proptest! {
    #![proptest_config(config(0x15))]
    #[test]
    fn canonical_form_is_idempotent(case in canonical_case()) { canonical_idempotent(case)?; }
}

proptest! {
    #![proptest_config(config(0x16))]
    #[test]
    fn polar_is_an_involution(case in polar_case()) { polar_involution(case)?; }
}

proptest! {
    #![proptest_config(config(0x17))]
    #[test]
    fn s_matrix_is_symmetric(case in s_matrix_case()) { s_matrix_symmetric(case)?; }
}
