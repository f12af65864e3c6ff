use quartic56::fermat::{aut_x48_group, build_neron_severi};
use quartic56::report::properties;

#[test]
fn s_polynomials_and_remainders_commute_with_reduction() {
    properties::lemma_commutation(0x51, 200).unwrap();
}

#[test]
fn tracked_bases_reduce_to_bases_over_residue_fields() {
    properties::tracked_basis_oracle(0x52, 24).unwrap();
}

#[test]
fn gcds_computes_the_common_primes() {
    properties::gcds_identity(7, 300).unwrap();
}

#[test]
fn enumeration_matches_box_search() {
    properties::enumeration_brute_force(11, 40).unwrap();
}

#[test]
fn automorphism_isometries_form_a_group() {
    let model = build_neron_severi().unwrap();
    let aut = aut_x48_group(&model).unwrap();
    properties::isometry_closure(&model, &aut, 3, 300).unwrap();
}
