use std::path::PathBuf;
use std::process::Command;

fn header() -> (PathBuf, String) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include").join("sqw.h");
    let text = std::fs::read_to_string(&path).expect("header generated by the build script");
    (path, text)
}

#[test]
fn header_declares_the_api() {
    let (_, text) = header();
    for decl in [
        "#ifndef SQW_H",
        "typedef struct SqwState SqwState;",
        "SQW_STATUS_OK = 0",
        "SQW_STATUS_NOT_PSD = 6",
        "SQW_STATUS_PANIC = 10",
        "#define SQW_AXIS_H3 3",
        "const char *sqw_version(void);",
        "const char *sqw_last_error_message(void);",
        "enum SqwStatus sqw_state_new(double a, double b, double c, double d, struct SqwState **out);",
        "void sqw_state_free(struct SqwState *state);",
        "enum SqwStatus sqw_maximize_gain(uint32_t axis, struct SqwGain *out);",
        "enum SqwStatus sqw_concurrence_oracle(const double *re, const double *im, double *out);",
        "extern \"C\"",
    ] {
        assert!(text.contains(decl), "missing: {decl}");
    }
}

#[test]
fn header_compiles_as_c() {
    let (path, _) = header();
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&path)
        .status()
    else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    assert!(status.success());
}
