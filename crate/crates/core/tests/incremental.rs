mod common;

#[test]
fn incremental_update_matches_rebuild() {
    let (checked, mismatches) = common::checks::check_extensions(0..1000, 40);
    assert!(mismatches.is_empty(), "{mismatches:#?}");
    assert!(checked >= 10_000, "only {checked} extensions checked");
}
