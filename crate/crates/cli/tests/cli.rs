use std::process::{Command, Output};

fn shiftalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shiftalg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn elem_comm_of_corners() {
    let o = shiftalg(&["elem", "comm", "C(1,0)", "C(0,1)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "C(1,1) - C(0,0)");
}

#[test]
fn elem_eval_canonicalizes() {
    let o = shiftalg(&["elem", "eval", "U*^1*U^1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "I");
    let o = shiftalg(&["elem", "eval", "U^1*U*^1"]);
    assert_eq!(stdout(&o).trim(), "I - C(0,0)");
    let o = shiftalg(&["elem", "eval", "U^2*E*U*^3"]);
    assert_eq!(stdout(&o).trim(), "C(2,3)");
}

#[test]
fn parse_error_names_token_and_position() {
    let o = shiftalg(&["elem", "eval", "U + %"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("position 4"), "{err}");
    assert!(err.contains('%'), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(shiftalg(&["nope"]).status.code(), Some(2));
    assert_eq!(shiftalg(&["audit", "run", "--window", "9"]).status.code(), Some(2));
    assert_eq!(shiftalg(&["audit", "run", "--eps", "1/0"]).status.code(), Some(2));
    assert_eq!(shiftalg(&["audit", "run", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(shiftalg(&["h2", "--m", "0"]).status.code(), Some(2));
}

#[test]
fn mat_dump_four_site_heatmap() {
    let o = shiftalg(&["mat", "dump", "U'^1 + 3/10 E", "--n", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "i,j,re,im");
    assert_eq!(lines.len(), 17);
    let nonzero: Vec<(String, String)> = lines[1..]
        .iter()
        .filter_map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[2].parse::<f64>().unwrap() != 0.0).then(|| (format!("{},{}", f[0], f[1]), f[2].to_string()))
        })
        .collect();
    let cells: Vec<&str> = nonzero.iter().map(|(c, _)| c.as_str()).collect();
    assert_eq!(cells, ["0,0", "0,1", "1,2", "2,3"]);
    assert!((nonzero[0].1.parse::<f64>().unwrap() - 0.3).abs() < 1e-15);
}

#[test]
fn spectrum_sweep_marks_edge() {
    let o = shiftalg(&[
        "spectrum", "sweep", "--variant", "backward", "--n", "16", "--eps-from", "-1.5", "--eps-to", "1.5", "--steps", "13",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 13 * 16);
    for r in &rows {
        let (eps, re, im) = (r[0].parse::<f64>().unwrap(), r[3].parse::<f64>().unwrap(), r[4].parse::<f64>().unwrap());
        if r[5] == "1" || r[5] == "true" {
            assert!((re - eps).abs() < 1e-10 && im.abs() < 1e-10);
        } else {
            assert!(re.abs() < 1e-10 && im.abs() < 1e-10);
        }
    }
}

#[test]
fn h2_report_is_json() {
    let o = shiftalg(&["h2", "--m", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["betti2"], 0);
    assert_eq!(v["M"], 2);
}

#[test]
fn audit_single_claim_structured() {
    let o = shiftalg(&["audit", "run", "--claims", "POLY-ABELIAN,SEPARATING", "--format", "structured", "--strict"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["version"], "1");
    let claims = v["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 2);
    assert_eq!(claims[0]["id"], "POLY-ABELIAN");
    assert_eq!(claims[0]["status"], "PASS");
    assert_eq!(claims[1]["status"], "AMENDED");
}

#[test]
fn audit_writes_out_file() {
    let path = std::env::temp_dir().join(format!("shiftalg-audit-{}.txt", std::process::id()));
    let o = shiftalg(&["audit", "run", "--claims", "TELESCOPE", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("TELESCOPE"));
}
