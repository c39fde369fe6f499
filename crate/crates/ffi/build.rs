fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let header = std::path::Path::new(&crate_dir).join("include/qplane.h");
    match cbindgen::generate(&crate_dir) {
        Ok(bindings) => {
            bindings.write_to_file(header);
        }
        Err(err) => {
            // Keep the committed header when generation is unavailable.
            println!("cargo:warning=cbindgen failed ({err}); using the committed include/qplane.h");
        }
    }
}
