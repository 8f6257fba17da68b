//! Command-line contract tests: golden outputs, pipe closure, exit codes.

use std::io::Write;
use std::process::{Command, Stdio};

fn cli(args: &[&str], stdin: Option<Vec<u8>>) -> (i32, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_extremal"));
    cmd.args(args).stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.stdin(if stdin.is_some() {
        Stdio::piped()
    } else {
        Stdio::null()
    });
    let mut child = cmd.spawn().expect("spawn extremal");
    let writer = stdin.map(|bytes| {
        let mut pipe = child.stdin.take().expect("stdin pipe");
        std::thread::spawn(move || {
            let _ = pipe.write_all(&bytes);
        })
    });
    let out = child.wait_with_output().expect("collect output");
    if let Some(handle) = writer {
        let _ = handle.join();
    }
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn golden(name: &str) -> Vec<u8> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read(&path).unwrap_or_else(|e| panic!("missing golden {}: {e}", path.display()))
}

#[test]
fn generator_outputs_match_goldens_byte_for_byte() {
    let cases: [(&[&str], &str); 6] = [
        (
            &["generate", "hypercube-odd", "--n", "2"],
            "hypercube-odd-n2.json",
        ),
        (
            &["generate", "cross-polytope-l1", "--n", "2"],
            "cross-polytope-l1-n2.json",
        ),
        (
            &["generate", "right-equidistant-linf", "--n", "2"],
            "right-equidistant-linf-n2.json",
        ),
        (
            &["generate", "right-equidistant-l1", "--n", "2"],
            "right-equidistant-l1-n2.json",
        ),
        (
            &["generate", "grid-mod-k", "--n", "2", "--k", "3"],
            "grid-mod-k-n2-k3.json",
        ),
        (
            &["generate", "euclid-simplex-center", "--n", "2"],
            "euclid-simplex-center-n2.json",
        ),
    ];
    for (args, file) in cases {
        let (code, out) = cli(args, None);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(out, golden(file), "byte mismatch for {file}");
        // Determinism: a second run produces identical bytes.
        let (_, again) = cli(args, None);
        assert_eq!(out, again, "non-deterministic output for {file}");
    }
}

#[test]
fn pipe_closure_generate_into_consumers() {
    let generators: [&[&str]; 6] = [
        &["generate", "hypercube-odd", "--n", "2"],
        &["generate", "cross-polytope-l1", "--n", "2"],
        &["generate", "right-equidistant-linf", "--n", "2"],
        &["generate", "right-equidistant-l1", "--n", "2"],
        &["generate", "grid-mod-k", "--n", "2", "--k", "3"],
        &["generate", "euclid-simplex-center", "--n", "2"],
    ];
    for gen in generators {
        let (code, out) = cli(gen, None);
        assert_eq!(code, 0);
        // Every verifier consumes every generator output without a format
        // error (exit 0 or 1, never 2).
        for predicate in ["right-equidistant", "odd-distances", "equilateral"] {
            let (code, _) = cli(&["verify", predicate], Some(out.clone()));
            assert!(code == 0 || code == 1, "{gen:?} | verify {predicate} -> {code}");
        }
        let (code, _) = cli(&["verify", "not-divisible", "--k", "3"], Some(out.clone()));
        assert!(code == 0 || code == 1);
        let (code, _) = cli(&["verify", "spectrum"], Some(out.clone()));
        assert_eq!(code, 0);
        // The searches accept the points as an explicit candidate set.
        let dir = std::env::temp_dir().join(format!("pipe-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("config.json");
        std::fs::write(&file, &out).unwrap();
        let (code, _) = cli(
            &["search", "odd-clique", "--input", file.to_str().unwrap()],
            None,
        );
        assert_eq!(code, 0, "{gen:?} as clique candidates");
    }
}

#[test]
fn expected_verdicts_and_exit_codes() {
    // Right-equidistant construction verifies clean.
    let (_, seq) = cli(&["generate", "right-equidistant-linf", "--n", "3"], None);
    let (code, out) = cli(&["verify", "right-equidistant"], Some(seq));
    assert_eq!(code, 0);
    assert_eq!(out, b"{\"ok\":true}\n");

    // The unit square re-tagged to l1 has an even diagonal: exit 1 plus a
    // machine-readable witness.
    let (_, square) = cli(&["generate", "hypercube-odd", "--n", "2"], None);
    let (code, out) = cli(
        &["verify", "odd-distances", "--metric", "l1"],
        Some(square.clone()),
    );
    assert_eq!(code, 1);
    let verdict: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(verdict["ok"], serde_json::json!(false));
    assert_eq!(verdict["witness"]["distance"], serde_json::json!("2"));

    // Malformed input: exit 2 with an error object.
    let (code, out) = cli(&["verify", "odd-distances"], Some(b"{not json".to_vec()));
    assert_eq!(code, 2);
    let err: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert!(err["error"]["message"].is_string());

    // --quiet keeps the exit code and silences stdout.
    let (code, out) = cli(
        &["verify", "odd-distances", "--metric", "l1", "--quiet"],
        Some(square),
    );
    assert_eq!(code, 1);
    assert!(out.is_empty());

    // Usage error: missing required modulus.
    let (_, cube) = cli(&["generate", "hypercube-odd", "--n", "2"], None);
    let (code, _) = cli(&["verify", "not-divisible"], Some(cube));
    assert_eq!(code, 2);
}

#[test]
fn certify_and_poset_pipeline() {
    let (_, cube) = cli(&["generate", "hypercube-odd", "--n", "3"], None);
    let (code, out) = cli(&["certify"], Some(cube.clone()));
    assert_eq!(code, 0);
    let cert: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(cert["set_size"], serde_json::json!(8));
    assert_eq!(cert["child"]["set_size"], serde_json::json!(4));
    assert_eq!(cert["child"]["child"]["set_size"], serde_json::json!(2));

    let (code, out) = cli(&["poset"], Some(cube.clone()));
    assert_eq!(code, 0);
    let poset: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(poset["longest_chain"]["length"], serde_json::json!(2));
    assert_eq!(poset["dilworth"]["antichain"].as_array().unwrap().len(), 4);

    // Certifying an even-distance set is a precondition failure (exit 2).
    let (_, grid) = cli(&["generate", "grid-mod-k", "--n", "2", "--k", "3"], None);
    let (code, _) = cli(&["certify"], Some(grid));
    assert_eq!(code, 2);
}

#[test]
fn search_json_is_deterministic_modulo_wall_time() {
    let args = [
        "search",
        "odd-clique",
        "--grid",
        r#"{"dim":2,"values":["0","1","2"]}"#,
        "--metric",
        "linf",
        "--deterministic",
    ];
    let (code, first) = cli(&args, None);
    assert_eq!(code, 0);
    let (_, second) = cli(&args, None);
    let strip = |bytes: &[u8]| {
        let mut v: serde_json::Value = serde_json::from_slice(bytes).unwrap();
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    let (a, b) = (strip(&first), strip(&second));
    assert_eq!(a, b);
    assert_eq!(a["best_size"], serde_json::json!(4));
    assert_eq!(a["exhaustive"], serde_json::json!(true));
    assert!(a["nodes_explored"].is_u64());
}

#[test]
fn embed_preserves_distances() {
    let (_, cross) = cli(&["generate", "cross-polytope-l1", "--n", "3"], None);
    let (code, out) = cli(&["embed"], Some(cross));
    assert_eq!(code, 0);
    let embedded: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(embedded["metric"], serde_json::json!("linf"));
    assert_eq!(embedded["dim"], serde_json::json!(4));
    // The image of an equilateral odd-distance set keeps both properties.
    let (code, _) = cli(&["verify", "equilateral"], Some(out.clone()));
    assert_eq!(code, 0);
    let (code, _) = cli(&["verify", "odd-distances"], Some(out));
    assert_eq!(code, 0);

    // Embedding is defined on Manhattan inputs only.
    let (_, cube) = cli(&["generate", "hypercube-odd", "--n", "2"], None);
    let (code, _) = cli(&["embed"], Some(cube));
    assert_eq!(code, 2);
}

#[test]
fn color_subcommands_roundtrip() {
    let dir = std::env::temp_dir().join(format!("color-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let covering_path = dir.join("covering.json");

    let (code, out) = cli(
        &["color", "build", "--dim", "2", "--strategy", "greedy"],
        None,
    );
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(doc["density_ratio"], serde_json::json!("4"));
    assert!(doc["count"].as_u64().unwrap() >= 4);
    std::fs::write(&covering_path, doc["covering"].to_string()).unwrap();

    let (code, out) = cli(
        &[
            "color",
            "check",
            "--covering",
            covering_path.to_str().unwrap(),
            "--samples",
            "5000",
            "--seed",
            "7",
        ],
        None,
    );
    assert_eq!(code, 0);
    assert_eq!(out, b"{\"ok\":true}\n");

    let (code, out) = cli(
        &[
            "color",
            "of",
            "--covering",
            covering_path.to_str().unwrap(),
            "--point",
            r#"["1/3", "5/7"]"#,
        ],
        None,
    );
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert!(doc["color"].is_u64() || doc["overflow"] == serde_json::json!(true));

    // Identical build invocations yield identical coverings.
    let (_, again) = cli(
        &["color", "build", "--dim", "2", "--strategy", "greedy"],
        None,
    );
    assert!(!out.is_empty());
    assert_eq!(
        serde_json::from_slice::<serde_json::Value>(&again).unwrap()["covering"],
        serde_json::from_str::<serde_json::Value>(
            &std::fs::read_to_string(&covering_path).unwrap()
        )
        .unwrap()
    );
}

#[test]
fn seven_point_witness_is_persisted() {
    let dir = std::env::temp_dir().join(format!("seven-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("witness.json");
    let (code, out) = cli(
        &["search", "odd-l1-seven", "--out", out_path.to_str().unwrap()],
        None,
    );
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    let best = doc["best_size"].as_u64().unwrap();
    assert!(best >= 6);
    if best >= 7 {
        let persisted = std::fs::read_to_string(&out_path).unwrap();
        let witness: serde_json::Value = serde_json::from_str(&persisted).unwrap();
        assert_eq!(witness["points"].as_array().unwrap().len() as u64, best);
    }
}
