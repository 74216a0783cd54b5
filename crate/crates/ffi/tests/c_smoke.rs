//! Compile and run a small C program against the generated header and the
//! built shared library.

use std::path::PathBuf;
use std::process::Command;

const C_SRC: &str = r#"
#include <stdio.h>
#include "lattice_euler.h"

int main(void) {
    LeSim *sim = NULL;
    if (le_sim_new(3, 1e-3, 42, 2, 1e-10, "random", &sim) != LE_STATUS_OK) return 1;
    if (le_sim_step(sim, 5) != LE_STATUS_OK) return 2;
    double d[4];
    if (le_sim_diagnostics(sim, d) != LE_STATUS_OK) return 3;
    if (d[0] < 0.999999 || d[0] > 1.000001) return 4;
    uintptr_t n = 0;
    if (le_sim_period(sim, &n) != LE_STATUS_OK || n != 3) return 5;
    double buf[27];
    if (le_sim_field(sim, LE_PLANE_YZ, buf, 27) != LE_STATUS_OK) return 6;
    le_sim_free(sim);
    printf("ok energy=%.12f\n", d[0]);
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    // target/<profile> is three levels above OUT_DIR's build scratch
    let out_dir = PathBuf::from(env!("OUT_DIR"));
    let profile_dir = out_dir.ancestors().nth(3).unwrap().to_path_buf();
    let lib = profile_dir.join("liblattice_euler_ffi.so");
    assert!(lib.exists(), "cdylib not found at {}", lib.display());

    let work = tempfile::tempdir().unwrap();
    let csrc = work.path().join("smoke.c");
    std::fs::write(&csrc, C_SRC).unwrap();
    let exe = work.path().join("smoke");
    let cc = Command::new("cc")
        .arg(&csrc)
        .arg("-I")
        .arg(&include)
        .arg("-L")
        .arg(&profile_dir)
        .arg("-llattice_euler_ffi")
        .arg("-o")
        .arg(&exe)
        .output()
        .expect("cc not available");
    assert!(cc.status.success(), "cc failed: {}", String::from_utf8_lossy(&cc.stderr));
    let run = Command::new(&exe)
        .env("LD_LIBRARY_PATH", &profile_dir)
        .output()
        .unwrap();
    assert!(
        run.status.success(),
        "smoke test exited {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout)
    );
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok energy="));
}
