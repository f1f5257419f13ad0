use dp4brauer_wasm::*;

#[test]
fn hilbert_product_is_one() {
    for (a, b) in [("-1", "-1"), ("2", "3"), ("-5/7", "14"), ("17", "-3/2")] {
        let v = hilbert_json(a, b).unwrap();
        assert_eq!(v["product"], 1, "{v}");
    }
    let v = hilbert_json("-1", "-1").unwrap();
    let at = |p: &str| v["places"].as_array().unwrap().iter().find(|r| r["place"] == p).unwrap()["symbol"].clone();
    assert_eq!(at("2"), -1);
    assert_eq!(at("inf"), -1);
    assert!(hilbert_json("0", "3").is_err());
    assert!(hilbert_json("x", "3").is_err());
}

#[test]
fn artin_invariants_sum_to_zero() {
    for (a, m, g) in [("3", 5, 2), ("-7/2", 17, 3), ("11", 5, 3), ("6", 13, 2)] {
        let v = artin_json(a, m, g).unwrap();
        assert_eq!(v["sum"], "0/1", "{v}");
    }
    assert!(artin_json("3", 8, 3).is_err());
}

#[test]
fn listed_points_evaluate() {
    let list = fixtures_json();
    for f in list.as_array().unwrap() {
        let id = f["id"].as_str().unwrap();
        let p = &f["points"][0];
        let text: Vec<String> = p.as_array().unwrap().iter().map(|c| c.to_string()).collect();
        let v = evaluate_json(id, &text.join(",")).unwrap();
        assert_eq!(v["sum"], "0/1", "{id}: {v}");
    }
    assert!(evaluate_json("typeii-sqrt5", "1,2,3,4,5").is_err());
    assert!(evaluate_json("nowhere", "1,1,0,1,0").is_err());
}
