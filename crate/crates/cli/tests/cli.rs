use std::process::{Command, Output};

fn skel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skel"))
        .args(args)
        .env_remove("SKEL_SEED")
        .output()
        .expect("runs skel")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = skel(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

#[test]
fn count_uniquely_closable_to_thirty() {
    let text = ok(&[
        "count",
        "--family",
        "uniquely_closable",
        "--upto-size",
        "30",
    ]);
    assert_eq!(text.lines().next(), Some("index_kind,index,family,value"));
    assert_eq!(
        text.lines().last(),
        Some("size,30,uniquely_closable,5724582")
    );
    assert_eq!(text.lines().count(), 32);
}

#[test]
fn count_csv_is_byte_stable() {
    let text = ok(&["count", "--family", "closable", "--upto-size", "5"]);
    assert_eq!(
        text,
        "index_kind,index,family,value\n\
         size,0,closable,0\nsize,1,closable,1\nsize,2,closable,1\n\
         size,3,closable,2\nsize,4,closable,5\nsize,5,closable,11\n"
    );
}

#[test]
fn count_methods_agree() {
    let series = ok(&[
        "count",
        "--family",
        "closable",
        "--upto-exponent",
        "60",
        "--method",
        "series",
    ]);
    let rec = ok(&[
        "count",
        "--family",
        "closable",
        "--upto-exponent",
        "60",
        "--method",
        "recurrence",
    ]);
    assert_eq!(series, rec);
}

#[test]
fn bfile_and_json() {
    assert_eq!(
        ok(&[
            "count",
            "--family",
            "catalan",
            "--upto-size",
            "3",
            "--format",
            "bfile"
        ]),
        "# catalan, indexed by k\n0 1\n1 1\n2 2\n3 5\n"
    );
    let json = ok(&[
        "count",
        "--family",
        "motzkin",
        "--upto-size",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(
        json,
        "{\"family\":\"motzkin\",\"index\":0,\"index_kind\":\"size\",\"value\":\"1\"}\n\
         {\"family\":\"motzkin\",\"index\":1,\"index_kind\":\"size\",\"value\":\"1\"}\n"
    );
}

#[test]
fn check_typable_skeletons() {
    let text = ok(&[
        "check",
        "--sequence",
        "typable_skeletons",
        "--upto-size",
        "12",
    ]);
    assert_eq!(
        text,
        "PASS typable_skeletons size 0..=12 (value at 12 = 5239)\n"
    );
}

#[test]
fn check_everything_shipped() {
    let text = ok(&["check"]);
    assert_eq!(text.lines().count(), 11);
    assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
}

#[test]
fn check_reports_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("closable.txt"), "# tampered\n0\n1\n1\n3\n").unwrap();
    let out = skel(&[
        "check",
        "--sequence",
        "closable",
        "--golden-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert_eq!(
        stdout(&out),
        "FAIL closable at size 3: computed 2, expected 3\n"
    );

    let out = skel(&["check", "--sequence", "closable", "--upto-size", "99"]);
    assert!(!out.status.success());
}

#[test]
fn bijection_size_seven() {
    assert_eq!(
        ok(&["bijection", "--size", "7"]),
        "a(l(v),a(l(v),l(v))) a(v,a(v,v))\na(a(l(v),l(v)),l(v)) a(a(v,v),v)\n"
    );
    assert_eq!(ok(&["bijection", "--size", "8"]), "");
}

#[test]
fn enumerate_outputs() {
    assert_eq!(
        ok(&["enumerate", "--family", "motzkin", "--size", "2"]),
        "l(l(v))\na(v,v)\n"
    );
    assert_eq!(
        ok(&[
            "enumerate",
            "--family",
            "closable",
            "--size",
            "6",
            "--count-only"
        ]),
        "26\n"
    );
    for c in ["grammar", "filter", "binder_count", "marker"] {
        let n = ok(&[
            "enumerate",
            "--family",
            "uniquely_closable",
            "--size",
            "9",
            "--construction",
            c,
            "--count-only",
        ]);
        assert_eq!(n, "20\n", "{c}");
    }
    assert_eq!(
        ok(&[
            "enumerate",
            "--family",
            "typable_closed_terms",
            "--size",
            "2",
            "--format",
            "csv"
        ]),
        "size,object,type\n2,l(l(v(0))),(0->(1->1))\n2,l(l(v(1))),(0->(1->0))\n"
    );
    assert!(!skel(&[
        "enumerate",
        "--family",
        "motzkin",
        "--size",
        "2",
        "--format",
        "bfile"
    ])
    .status
    .success());
    assert!(!skel(&[
        "enumerate",
        "--family",
        "closable",
        "--size",
        "2",
        "--construction",
        "marker"
    ])
    .status
    .success());
}

#[test]
fn classify_reports_type() {
    assert_eq!(
        ok(&["classify", "a(l(v),l(v))", "a(v,v)", "--format", "csv"]),
        "skeleton,size,closable,uniquely_closable,typable,uniquely_typable,type\n\
         a(l(v),l(v)),4,true,true,true,true,(0->0)\n\
         a(v,v),2,false,false,false,false,\n"
    );
    assert!(!skel(&["classify", "a(v)"]).status.success());
}

/// Drops the wall-clock field from stats lines.
fn strip_elapsed(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| match serde_json::from_str::<serde_json::Value>(l) {
            Ok(mut v) => {
                v.as_object_mut().unwrap().remove("elapsed_ms");
                v.to_string()
            }
            Err(_) => l.to_string(),
        })
        .collect()
}

#[test]
fn sampling_is_reproducible() {
    let args = [
        "sample",
        "--family",
        "uniquely_closable",
        "--min",
        "20",
        "--max",
        "60",
        "--count",
        "5",
        "--seed",
        "11",
    ];
    let a = ok(&args);
    let b = ok(&args);
    assert_eq!(strip_elapsed(&a), strip_elapsed(&b));
    assert_eq!(a.lines().count(), 10);

    let from_env = Command::new(env!("CARGO_BIN_EXE_skel"))
        .args(&args[..args.len() - 2])
        .env("SKEL_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(strip_elapsed(&stdout(&from_env)), strip_elapsed(&a));

    for pair in a.lines().collect::<Vec<_>>().chunks(2) {
        let stats: serde_json::Value = serde_json::from_str(pair[1]).unwrap();
        let size = stats["size"].as_u64().unwrap();
        assert!((20..=60).contains(&size));
        let class = ok(&["classify", pair[0], "--format", "json"]);
        let class: serde_json::Value = serde_json::from_str(&class).unwrap();
        assert_eq!(class["uniquely_closable"], true);
        assert_eq!(class["size"].as_u64(), Some(size));
    }
}

#[test]
fn sampling_budget_exhaustion_fails() {
    let out = skel(&[
        "sample", "--family", "closable", "--min", "5000", "--max", "5000", "--tries", "2",
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("after 2 tries"));
}

#[test]
fn density_rows() {
    let text = ok(&["density", "--upto-size", "4"]);
    assert_eq!(
        text,
        "n,closable,typable,ratio\n0,0,0,\n1,1,1,1.000000\n2,1,1,1.000000\n3,2,1,0.500000\n4,5,5,1.000000\n"
    );
}
