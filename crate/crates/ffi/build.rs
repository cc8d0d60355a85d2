use std::env;
use std::path::PathBuf;

use cbindgen::{Builder, Config, Language, RenameRule, Style};

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    println!("cargo:rerun-if-changed=src/lib.rs");

    let mut config = Config {
        language: Language::C,
        include_guard: Some("SQW_H".into()),
        cpp_compat: true,
        style: Style::Both,
        header: Some("/* Generated by cbindgen from src/lib.rs. Do not edit. */".into()),
        ..Default::default()
    };
    config.enumeration.rename_variants = RenameRule::QualifiedScreamingSnakeCase;

    Builder::new()
        .with_config(config)
        .with_crate(&crate_dir)
        .generate()
        .expect("header generation")
        .write_to_file(crate_dir.join("include").join("sqw.h"));
}
