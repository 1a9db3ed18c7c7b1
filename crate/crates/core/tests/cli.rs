use std::process::Command;

fn cfgreens() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cfgreens"))
}

#[test]
fn generates_and_checks_hydrogen() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.rgf");
    let pot = dir.path().join("h.pot");
    let res = cfgreens()
        .args(["--potential", "coulomb:1", "--grid", "2.177968408335618e-4,0.125,200", "--units", "Hartree"])
        .args(["--gf=-0.6:s", "--gf=-0.2:p-", "--check"])
        .arg("--out")
        .arg(&out)
        .arg("--save-pot")
        .arg(&pot)
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&res.stdout);
    assert!(res.status.success(), "{text}\n{}", String::from_utf8_lossy(&res.stderr));
    for needle in ["1s", "2s", "2p-", "3p-", "100%", "2 radial Green's functions"] {
        assert!(text.contains(needle), "{needle} missing from\n{text}");
    }
    let file = cfgreens::io::read_rgf(&out).unwrap();
    assert_eq!(file.functions.len(), 2);
    assert_eq!(file.functions[1].kappa, 1);
    assert!(cfgreens::io::read_pot(&pot).is_ok());

    // the same potential read back from disk
    let res = cfgreens()
        .arg(format!("--potential=file:{}", pot.display()))
        .args(["--grid", "2.177968408335618e-4,0.125,200", "--units", "Hartree", "--gf=-0.6:s"])
        .arg("--out")
        .arg(dir.path().join("h2.rgf"))
        .output()
        .unwrap();
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
}

#[test]
fn reports_failures() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.rgf");
    let empty = cfgreens().arg("--out").arg(&out).output().unwrap();
    assert!(!empty.status.success());
    assert!(String::from_utf8_lossy(&empty.stderr).contains("no Green's functions"));

    let label = cfgreens().args(["--gf=-100:x"]).arg("--out").arg(&out).output().unwrap();
    assert!(!label.status.success());
    assert!(String::from_utf8_lossy(&label.stderr).contains("p-"));

    // exactly at the hydrogen ground state
    let c = cfgreens::greens::PhysicalConstants::default();
    let e = cfgreens::dirac::sommerfeld_energy(1.0, 1, -1, &c).unwrap();
    let pole = cfgreens()
        .args(["--potential", "coulomb:1", "--units", "Hartree"])
        .arg(format!("--gf={e:.17e}:s"))
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(!pole.status.success());
    let msg = String::from_utf8_lossy(&pole.stderr);
    assert!(msg.contains("s:") && msg.contains("eigenvalue"), "{msg}");
}

#[test]
fn matrix_element_subcommand() {
    let res = cfgreens()
        .args(["matel", "--potential", "coulomb:1", "--units", "Hartree", "--gf=-0.6:p-"])
        .args(["--beta", "1s", "--alpha", "1s", "--k", "0.1", "--lambda", "1", "--ktilde", "0.1", "--lambda-tilde", "1"])
        .output()
        .unwrap();
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let u: f64 = String::from_utf8_lossy(&res.stdout).trim().parse().unwrap();
    assert!(u.is_finite() && u != 0.0);
    let bad = cfgreens()
        .args(["matel", "--gf=-100:s", "--beta", "1s", "--alpha", "1s", "--components", "LLX"])
        .output()
        .unwrap();
    assert!(!bad.status.success());
}
