use gem_core::catalog::{default_catalog_dir, load_catalog, verify_catalog};

#[test]
fn bundled_catalog_verifies() {
    let entries = load_catalog(&default_catalog_dir()).unwrap();
    assert_eq!(entries.len(), 13);
    for r in verify_catalog(&entries) {
        print!("{r}");
        assert!(r.passed(), "{}", r.name);
    }
}
