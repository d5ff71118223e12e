use proptest::prelude::*;

use crate::metrics::{farey_distance, quandle_distance, replay, BfsConfig};
use crate::torus::CurveClass;

fn primitive(cap: i64) -> impl Strategy<Value = CurveClass> {
    (-cap..=cap, -cap..=cap).prop_map(CurveClass::from).prop_filter("primitive", |c| c.is_primitive())
}

fn cfg() -> BfsConfig {
    BfsConfig { coord_cap: 60, twist_cap: 12, depth_cap: 4, node_cap: 1_000_000 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quandle_metric_is_a_metric(a in primitive(4), b in primitive(4), c in primitive(4)) {
        let d = |x: &CurveClass, y: &CurveClass| {
            let r = quandle_distance(x, y, &cfg()).unwrap();
            if r.value.is_some() {
                prop_assert_eq!(replay(x, &r.path), y.clone());
            }
            Ok(r.exact_within_caps.then_some(r.value).flatten())
        };
        let (ab, ba, bc, ac) = (d(&a, &b)?, d(&b, &a)?, d(&b, &c)?, d(&a, &c)?);
        if let (Some(ab), Some(ba)) = (ab, ba) {
            prop_assert_eq!(ab, ba);
        }
        if let (Some(ab), Some(bc), Some(ac)) = (ab, bc, ac) {
            prop_assert!(ac <= ab + bc);
        }
    }

    #[test]
    fn farey_metric_is_a_metric(a in primitive(6), b in primitive(6), c in primitive(6)) {
        let d = |x: &CurveClass, y: &CurveClass| {
            let r = farey_distance(x, y, &cfg()).unwrap();
            if r.value.is_some() {
                prop_assert_eq!(replay(x, &r.path), y.clone());
            }
            Ok(r.value)
        };
        let (ab, ba, bc, ac) = (d(&a, &b)?, d(&b, &a)?, d(&b, &c)?, d(&a, &c)?);
        prop_assert_eq!(ab, ba);
        if let (Some(ab), Some(bc), Some(ac)) = (ab, bc, ac) {
            prop_assert!(ac <= ab + bc);
        }
    }

    #[test]
    fn quandle_distance_at_most_farey(a in primitive(5), b in primitive(5)) {
        let d = quandle_distance(&a, &b, &cfg()).unwrap();
        let f = farey_distance(&a, &b, &cfg()).unwrap();
        if let (Some(d), Some(f)) = (d.value, f.value) {
            prop_assert!(d <= f);
        }
    }

    #[test]
    fn larger_caps_never_lengthen(a in primitive(4), b in primitive(4)) {
        let small = quandle_distance(&a, &b, &BfsConfig { coord_cap: 30, twist_cap: 6, depth_cap: 3, ..cfg() }).unwrap();
        let large = quandle_distance(&a, &b, &cfg()).unwrap();
        if let (Some(s), Some(l)) = (small.value, large.value) {
            prop_assert!(l <= s);
        }
        if small.value.is_some() {
            prop_assert!(large.value.is_some());
        }
    }
}
