// Copyright 2026 The klm-prep Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! Compiles a small C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "klm_prep.h"

int main(void) {
    double re[] = {1, 3, 6, 3, 1};
    KlmSpecHandle *spec = NULL;
    KlmPlanHandle *plan = NULL;
    double total = 0, fid = 0;
    if (klm_spec_new(re, NULL, 5, &spec) != KLM_OK) return 10;
    if (klm_plan_new(spec, KLM_STRATEGY_OPTIMAL, &plan) != KLM_OK) return 11;
    if (klm_plan_total(plan, &total) != KLM_OK) return 12;
    if (klm_plan_simulate(plan, &fid) != KLM_OK) return 13;
    if (fabs(total - 0.00197079) > 1e-7 || fid < 1 - 1e-9) return 14;
    if (klm_plan_new(spec, 42, &plan) != KLM_ERR_VALIDATION) return 15;
    if (klm_last_error_message() == NULL) return 16;
    printf("%.12g %.12g\n", total, fid);
    klm_plan_free(plan);
    klm_spec_free(spec);
    return 0;
}
"#;

fn cc() -> Option<&'static str> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler on PATH, skipping");
        return;
    };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libklm_prep_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());

    let work = tempfile::tempdir().unwrap();
    let src = work.path().join("main.c");
    let exe = work.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("0.00197079"), "{text}");
}
