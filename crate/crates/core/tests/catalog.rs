use eulab_core::verify::{verify, verify_all, Identity, Status};
use eulab_core::Error;

#[test]
fn whole_catalog_passes_at_default_ranges() {
    let reports = verify_all(None, None);
    assert_eq!(reports.len(), Identity::ALL.len());
    for (id, r) in reports {
        let r = r.unwrap_or_else(|e| panic!("{id}: {e}"));
        assert_eq!(r.status, Status::Pass, "{r}");
        assert!(r.counterexample.is_none());
    }
}

#[test]
fn k_narrows_the_stirling_identities() {
    for id in Identity::ALL.into_iter().filter(|i| i.takes_k()) {
        for k in 1..=3 {
            let r = verify(id, Some(4), Some(k)).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.range.contains(&format!("k = {k}")));
        }
    }
}

#[test]
fn guards_surface_as_errors() {
    assert!(matches!(
        verify(Identity::Stembridge, Some(11), None),
        Err(Error::SizeLimit { .. })
    ));
    assert!(matches!(
        verify(Identity::KthGrammar, Some(9), Some(4)),
        Err(Error::SizeLimit { .. })
    ));
}

#[test]
fn report_json_shape() {
    let r = verify(Identity::Andre, Some(3), None).unwrap();
    let v = r.to_json_value();
    assert_eq!(v["identity"], "andre");
    assert_eq!(v["status"], "pass");
    assert!(v["counterexample"].is_null());
    assert!(v["wall_time_ms"].is_u64());
}
