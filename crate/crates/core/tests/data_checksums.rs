//! Guards the shipped tables against accidental edits.

use sha2::{Digest, Sha256};

const FILES: &[(&str, &str)] = &[
    ("cwd4.json", "4ff4b39ff5d165f807b49a252d5966d4377e26fc979f97b01f6bbd423341d30c"),
    ("dim_table_24.txt", "ada880a22c4564a2502fc80a2f82e4d04009c8c024d972318762c3af7eab58ac"),
    ("leech.json", "9f7d67ed49713fc53bc7d3542725b4a52d000d5931326408a527881964a5cc01"),
    ("niemeier.json", "05d0afe6ae19e5a09f8b8c52f702b776d75ad36dc3c0ea9fb0bab4fe5741a19b"),
    ("we6.json", "1ae72212f587beeec9ccc35d994aa277be67fa440b3044056c8df9999b44b460"),
    ("we7.json", "0629040a236e414dea6654a3bd128a9f077465862294885b4ef2f2e49f9dde76"),
    ("we8.json", "2f77effc54dc4d900d96e06db3a4dae7a25baf10c0683e286de3cb41d794406f"),
];

#[test]
fn data_files_are_unchanged() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for (name, want) in FILES {
        let bytes = std::fs::read(dir.join(name)).unwrap();
        let got: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(&got, want, "{name}");
    }
}
