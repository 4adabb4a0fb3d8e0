mod common;

use common::{bezout, code, stdout};

const CONIC_CUBIC: [&str; 4] = ["--f", "x0^2*x2 - x1^3", "--g", "x1^2 + x2^2 - 2*x0^2"];

fn plot(extra: &[&str]) -> (String, i32) {
    let mut args = vec!["plot"];
    args.extend_from_slice(extra);
    let out = bezout(&args);
    (stdout(&out), code(&out))
}

/// (x, y, label) of every text element, mapped back to plane coordinates.
fn labels(svg: &str) -> Vec<(f64, f64, String)> {
    // 600x600 canvas, margin 20, window -2..2 on both axes
    let scale = 560.0 / 4.0;
    svg.lines()
        .filter(|l| l.starts_with("<text"))
        .map(|l| {
            let attr = |name: &str| -> f64 {
                let start = l.find(&format!("{name}=\"")).unwrap() + name.len() + 2;
                l[start..].split('"').next().unwrap().parse().unwrap()
            };
            let label = l.split('>').nth(1).unwrap().split('<').next().unwrap().to_string();
            let x = (attr("x") - 6.0 - 20.0) / scale - 2.0;
            let y = (600.0 - 20.0 - (attr("y") + 6.0)) / scale - 2.0;
            (x, y, label)
        })
        .collect()
}

#[test]
fn conic_cubic_labels() {
    let mut args = CONIC_CUBIC.to_vec();
    args.extend(["--window", "-2,2,-2,2"]);
    let (svg, c) = plot(&args);
    assert_eq!(c, 0);
    assert!(svg.contains(r#"version="1.1""#));
    let mut found = labels(&svg);
    found.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    assert_eq!(found.len(), 2);
    let close = |a: f64, b: f64| (a - b).abs() < 1e-4;
    assert!(close(found[0].0, -1.0) && close(found[0].1, -1.0) && found[0].2 == "+1", "{found:?}");
    assert!(close(found[1].0, 1.0) && close(found[1].1, 1.0) && found[1].2 == "-1", "{found:?}");
    assert_eq!(svg.matches("<path").count(), 2);
}

#[test]
fn deterministic() {
    let args = [&CONIC_CUBIC[..], &["--samples", "64", "--seed", "3"]].concat();
    assert_eq!(plot(&args), plot(&args));
    let (svg, _) = plot(&args);
    let b = svg.as_bytes();
    let exponent = b.windows(2).any(|w| w[0].is_ascii_digit() && (w[1] == b'e' || w[1] == b'E'));
    assert!(!exponent, "no exponent notation in coordinates");
}

#[test]
fn no_labels_flag_keeps_markers() {
    let args = [&CONIC_CUBIC[..], &["--no-labels"]].concat();
    let (svg, c) = plot(&args);
    assert_eq!(c, 0);
    assert_eq!(svg.matches("<text").count(), 0);
    assert_eq!(svg.matches("<circle").count(), 2);
}

#[test]
fn disjoint_line_has_no_labels() {
    let (svg, c) = plot(&["--f", "x0*x2 - x1^2", "--g", "x2 + 3*x0"]);
    assert_eq!(c, 0);
    assert_eq!(svg.matches("<text").count(), 0);
    assert_eq!(svg.matches("<circle").count(), 0);
}

#[test]
fn tangency_is_labelled_zero() {
    let (svg, c) = plot(&["--f", "y - x^2", "--g", "y"]);
    assert_eq!(c, 0);
    let found = labels(&svg);
    assert_eq!(found.len(), 1);
    assert!(found[0].0.abs() < 1e-4 && found[0].1.abs() < 1e-4 && found[0].2 == "0", "{found:?}");
}

#[test]
fn bad_windows_exit_1() {
    assert_eq!(plot(&[&CONIC_CUBIC[..], &["--window", "1,1,-2,2"]].concat()).1, 1);
    assert_eq!(plot(&[&CONIC_CUBIC[..], &["--window", "0,1,2"]].concat()).1, 1);
    assert_eq!(plot(&[&CONIC_CUBIC[..], &["--samples", "4"]].concat()).1, 1);
}

#[test]
fn writes_file() {
    let path = std::env::temp_dir().join(format!("bezout-plot-{}.svg", std::process::id()));
    let args = [&CONIC_CUBIC[..], &["--out", path.to_str().unwrap()]].concat();
    let (out, c) = plot(&args);
    assert_eq!((out.as_str(), c), ("", 0));
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, plot(&CONIC_CUBIC).0);
}
