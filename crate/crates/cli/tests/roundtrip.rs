use std::process::Command;

use proptest::prelude::*;

fn nf(args: &[&str], expr: &str) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_susp"))
        .args(args)
        .args(["nf", expr])
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8");
    if out.status.success() {
        Ok(text.trim().to_owned())
    } else {
        Err(String::from_utf8_lossy(&out.stderr).into_owned())
    }
}

/// Random expression text over the given atoms, with the full operator set.
fn arb_expr(atoms: &'static [&'static str]) -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (-9i32..10).prop_map(|n| n.to_string()),
        (1i32..5, 2i32..5).prop_map(|(a, b)| format!("{a}/{b}")),
        proptest::sample::select(atoms).prop_map(str::to_owned),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) + ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} - ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), 0u32..3).prop_map(|(a, e)| format!("({a})^{e}")),
            inner.prop_map(|a| format!("-({a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn base_ring_print_parses_back(e in arb_expr(&["x", "y", "z"])) {
        let args = ["--ring", "QQ[x,y,z]"];
        let printed = nf(&args, &e).map_err(TestCaseError::fail)?;
        let again = nf(&args, &printed).map_err(TestCaseError::fail)?;
        prop_assert_eq!(printed, again);
    }

    #[test]
    fn tower_print_parses_back(e in arb_expr(&["x", "y", "u", "v"])) {
        let args = ["--ring", "QQ[x,y]", "--f", "(x-1)*x*y+1"];
        let printed = nf(&args, &e).map_err(TestCaseError::fail)?;
        let again = nf(&args, &printed).map_err(TestCaseError::fail)?;
        prop_assert_eq!(printed, again);
    }

    #[test]
    fn whitespace_is_insignificant(e in arb_expr(&["x", "u", "v"])) {
        let args = ["--ring", "QQ[x]", "--f", "x"];
        let spaced: String = e.chars().flat_map(|c| [c, ' ']).collect();
        let compact: String = e.chars().filter(|c| !c.is_whitespace()).collect();
        prop_assert_eq!(nf(&args, &spaced), nf(&args, &compact));
    }
}
