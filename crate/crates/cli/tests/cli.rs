use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cgauto::decide::{ball_shells, canonical_rep, conjugate, words_equal};
use cgauto::groups::{bs1n, heisenberg, zn, GroupWord};
use cgauto::io::{presentation_to_json, Document};
use cgauto::par::Parallelism;
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cgauto"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn built(dir: &TempDir, args: &[&str], file: &str) -> PathBuf {
    let mut a = vec!["build"];
    a.extend_from_slice(args);
    a.extend_from_slice(&["--out", file]);
    let o = run(dir.path(), &a);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    dir.path().join(file)
}

#[test]
fn build_writes_presentations() {
    let dir = TempDir::new().unwrap();
    let h = built(&dir, &["heisenberg"], "h3.json");
    let p = Document::load(&h).unwrap().into_presentation().unwrap();
    assert_eq!(p.generators().len(), 3);
    assert_eq!(
        fs::read_to_string(&h).unwrap(),
        presentation_to_json(&heisenberg(3).unwrap()) + "\n"
    );
    let b = built(&dir, &["bs1n", "-p", "2"], "bs.json");
    assert_eq!(
        Document::load(&b)
            .unwrap()
            .into_presentation()
            .unwrap()
            .generators()
            .len(),
        2
    );
}

#[test]
fn parameter_errors() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&run(dir.path(), &["build", "zn", "-n", "0"])), 3);
    assert_eq!(code(&run(dir.path(), &["build", "nosuch"])), 3);
    assert_eq!(
        code(&run(dir.path(), &["ball", "missing.json", "-r", "1"])),
        3
    );
    fs::write(dir.path().join("bad.json"), "{\"kind\": \"presentation\"").unwrap();
    assert_eq!(code(&run(dir.path(), &["eval", "bad.json", "a"])), 3);
    built(&dir, &["zn", "-n", "1"], "z.json");
    assert_eq!(code(&run(dir.path(), &["eval", "z.json", "q"])), 3);
}

#[test]
fn heisenberg_commands() {
    let dir = TempDir::new().unwrap();
    built(&dir, &["heisenberg"], "h3.json");
    assert_eq!(
        code(&run(
            dir.path(),
            &["relator", "h3.json", "A C A^-1 C^-1 B^-1"]
        )),
        0
    );
    assert_eq!(
        code(&run(dir.path(), &["relator", "h3.json", "A B A^-1 B^-1"])),
        0
    );
    let o = run(dir.path(), &["relator", "h3.json", "A C A^-1 C^-1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("false"));
    assert_eq!(
        code(&run(dir.path(), &["equal", "h3.json", "C A B", "A C"])),
        0
    );
    assert_eq!(
        code(&run(dir.path(), &["equal", "h3.json", "C A", "A C"])),
        1
    );
    assert_eq!(code(&run(dir.path(), &["conj", "h3.json", "A", "A B"])), 0);
    assert_eq!(code(&run(dir.path(), &["conj", "h3.json", "B", "B^2"])), 1);
    assert_eq!(code(&run(dir.path(), &["check", "h3.json"])), 0);
}

#[test]
fn ball_sizes() {
    let dir = TempDir::new().unwrap();
    built(&dir, &["heisenberg"], "h3.json");
    let o = run(dir.path(), &["ball", "h3.json", "-r", "2"]);
    assert_eq!(code(&o), 0);
    // 3x3 unitriangular matrices reachable in two steps from the generators
    assert_eq!(stdout(&o).trim(), "1, 7, 29");
    let listed = stdout(&run(
        dir.path(),
        &["ball", "h3.json", "-r", "1", "--list", "--sequential"],
    ));
    assert_eq!(listed.lines().filter(|l| l.starts_with("  ")).count(), 7);
}

#[test]
fn formulas() {
    let dir = TempDir::new().unwrap();
    built(&dir, &["presburger"], "pres.json");
    let o = run(
        dir.path(),
        &["fo", "pres.json", "E x (Add(x,x,x))", "--decide"],
    );
    assert_eq!(
        (code(&o), stdout(&o).trim().to_string()),
        (0, "true".to_string())
    );
    let o = run(
        dir.path(),
        &["fo", "pres.json", "A x (Add(x,x,x))", "--decide"],
    );
    assert_eq!(code(&o), 1);
    let o = run(dir.path(), &["fo", "pres.json", "E x (Add(x,x", "--decide"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("at "));

    built(&dir, &["gamma-free", "--rank", "2"], "gf.json");
    let phi =
        "A u A v ((Prefix(u,w) & (E_a(u,v) | E_b(u,v))) -> E z (Prefix(z,v) & z != v & El(z,u)))";
    fs::write(dir.path().join("phi.txt"), phi).unwrap();
    let o = run(
        dir.path(),
        &[
            "fo",
            "gf.json",
            "phi.txt",
            "--list",
            "5",
            "--compile",
            "phi.rel",
        ],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let words: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(words, vec!["λ", "a", "b", "a a", "a b"]);
    assert!(fs::read_to_string(dir.path().join("phi.rel"))
        .unwrap()
        .starts_with("relation 1 over"));
}

#[test]
fn export_files() {
    let dir = TempDir::new().unwrap();
    built(&dir, &["zn", "-n", "1"], "z.json");
    let o = run(
        dir.path(),
        &["export", "z.json", "--dot", "dots", "--json", "z2.json"],
    );
    assert_eq!(code(&o), 0);
    let mut names: Vec<String> = fs::read_dir(dir.path().join("dots"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names, vec!["domain.dot", "e1.left.dot", "e1.right.dot"]);
    for n in &names {
        let t = fs::read_to_string(dir.path().join("dots").join(n)).unwrap();
        assert!(t.starts_with("digraph") && t.trim_end().ends_with('}'));
    }
    let a = fs::read(dir.path().join("z.json")).unwrap();
    assert_eq!(a, fs::read(dir.path().join("z2.json")).unwrap());
    run(dir.path(), &["export", "z2.json", "--json", "z3.json"]);
    assert_eq!(a, fs::read(dir.path().join("z3.json")).unwrap());
}

#[test]
fn integers() {
    let dir = TempDir::new().unwrap();
    for n in [-300i64, -5, -1, 0, 1, 2, 17, 4096] {
        let enc = stdout(&run(dir.path(), &["int", "encode", &n.to_string()]));
        let dec = stdout(&run(dir.path(), &["int", "decode", enc.trim()]));
        assert_eq!(dec.trim(), n.to_string());
    }
    assert_eq!(
        stdout(&run(dir.path(), &["int", "encode", "--", "-5"])).trim(),
        "1101"
    );
    assert_eq!(
        stdout(&run(dir.path(), &["int", "decode", "2210", "-p", "3"])).trim(),
        "17"
    );
    assert_eq!(
        code(&run(dir.path(), &["int", "decode", "12", "-p", "2"])),
        3
    );
}

#[test]
fn random_words_are_seeded() {
    let dir = TempDir::new().unwrap();
    built(&dir, &["bs1n", "-p", "3"], "bs.json");
    let a = stdout(&run(
        dir.path(),
        &["random", "bs.json", "-c", "5", "--seed", "9"],
    ));
    let b = stdout(&run(
        dir.path(),
        &["random", "bs.json", "-c", "5", "--seed", "9"],
    ));
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 5);
}

#[test]
fn commands_match_library_calls() {
    let dir = TempDir::new().unwrap();
    let corpus = [
        (
            vec!["heisenberg"],
            heisenberg(3).unwrap(),
            vec!["A B C", "C^-1 A^2", "B B^-1", "A C A^-1 C^-1"],
        ),
        (
            vec!["bs1n", "-p", "2"],
            bs1n(2).unwrap(),
            vec!["a b a^-1", "b^3 a^-2", "a^-1 b a", "b^2"],
        ),
        (
            vec!["zn", "-n", "2"],
            zn(2).unwrap(),
            vec!["e1 e2", "e2^-3", "e1^2 e2 e1^-1", "e2 e1"],
        ),
    ];
    for (i, (args, p, words)) in corpus.iter().enumerate() {
        let file = format!("p{i}.json");
        built(&dir, args, &file);
        let a = p.alphabet();
        let shells = ball_shells(p, 2, Parallelism::Sequential).unwrap();
        let mut listed = Vec::new();
        for s in &shells {
            for u in s {
                listed.push(if u.is_empty() {
                    "λ".to_string()
                } else {
                    a.render(u)
                });
            }
        }
        let out = stdout(&run(dir.path(), &["ball", &file, "-r", "2", "--list"]));
        let got: Vec<String> = out
            .lines()
            .filter_map(|l| l.strip_prefix("  "))
            .map(str::to_string)
            .collect();
        assert_eq!(got, listed);
        for w in words {
            let g = GroupWord::parse(w).unwrap();
            let rep = canonical_rep(p, &g).unwrap();
            let out = stdout(&run(dir.path(), &["eval", &file, w]));
            assert_eq!(
                out.trim(),
                if rep.is_empty() {
                    "λ".into()
                } else {
                    a.render(&rep)
                }
            );
            for v in words {
                let gv = GroupWord::parse(v).unwrap();
                let eq = words_equal(p, &g, &gv).unwrap();
                assert_eq!(
                    code(&run(dir.path(), &["equal", &file, w, v])),
                    if eq { 0 } else { 1 }
                );
            }
        }
        if p.is_biautomatic() {
            let (x, y) = (
                GroupWord::parse(words[0]).unwrap(),
                GroupWord::parse(words[1]).unwrap(),
            );
            let lib = conjugate(p, &x, &y).unwrap().is_some();
            assert_eq!(
                code(&run(dir.path(), &["conj", &file, words[0], words[1]])),
                if lib { 0 } else { 1 }
            );
        }
    }
}
