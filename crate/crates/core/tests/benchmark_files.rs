//! Guards the vendored benchmark systems against accidental edits.

use std::path::PathBuf;

use sha2::{Digest, Sha256};

use isolat::poly::parse_system;

const FILES: &[(&str, &str, &[u32])] = &[
    (
        "barry",
        "0e9f42e78dd10acb1def518f464b8562e755b65843a7ac03f55f5d329a8092a9",
        &[5, 4, 1],
    ),
    (
        "cyclic5",
        "cf1d6e66fcb66ec1166ae14e4d49c30be28ac988a63776dabfe47409da89341e",
        &[1, 2, 3, 4, 5],
    ),
    (
        "cyclic6",
        "7276c53e255eafc9b814d89d3dd1045fa5daebbef8b61b58871c3c3dd5a9d3f6",
        &[1, 2, 3, 4, 5, 6],
    ),
    (
        "demo",
        "a7c90f3851278719c69a9fa7a499de6a20260227aa1d0459e1ab9165e245ac8a",
        &[5, 10, 1],
    ),
    (
        "des18_3",
        "6db91abfbfd117370904ea5b4bba94dfb8f92a843ff3de6755e9b5aeca0021fe",
        &[3, 3, 2, 3, 3, 2, 1, 1],
    ),
    (
        "eco7",
        "600629c893b7bbada7b22cf1261836767e227cf8308fe52f1799bd44ad32f7a9",
        &[3, 3, 3, 3, 3, 2, 1],
    ),
    (
        "eco8",
        "b9bb7ccd1309a2b9c1f627b2e0257a3259074b64a3dafe5b3377c8939e7b2ba3",
        &[3, 3, 3, 3, 3, 3, 2, 1],
    ),
    (
        "geneig",
        "d7fa0530903c051f61d1dfbf105377954b63e9b72879174742343d64520049b5",
        &[3, 3, 3, 3, 3, 1],
    ),
    (
        "kinema",
        "c088587566fecfd9237dc24b41a1571296b57e2f738f3bdf3a98c6d6fca956d9",
        &[2, 2, 2, 2, 2, 2, 1, 1, 1],
    ),
    (
        "reimer4",
        "50f7294f7cabc83c14871a1c949807db81d2ee3f25b953fcd84e9ab05419f31c",
        &[2, 3, 4, 5],
    ),
    (
        "reimer5",
        "f0ac89a077a956b47fff6ae70a86d266da5655f936349553b912418d837a3d05",
        &[2, 3, 4, 5, 6],
    ),
    (
        "virasoro",
        "52619cfa2d6d662777aa79d8572d18537f86b74df3cd0d0ac027e90efda842fe",
        &[2; 8],
    ),
];

fn dir() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "benchmarks"].iter().collect()
}

#[test]
fn checksums_match() {
    for (name, digest, _) in FILES {
        let bytes = std::fs::read(dir().join(format!("{name}.txt"))).unwrap();
        let got: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(&got, digest, "{name}.txt changed");
    }
}

#[test]
fn systems_parse_with_expected_degrees() {
    for (name, _, degrees) in FILES {
        let text = std::fs::read_to_string(dir().join(format!("{name}.txt"))).unwrap();
        let sys = parse_system(&text).unwrap();
        assert_eq!(sys.dim(), degrees.len(), "{name}");
        assert_eq!(sys.total_degrees(), degrees.to_vec(), "{name}");
        assert_eq!(sys.bezout_number(), degrees.iter().map(|&d| d as u64).product::<u64>());
    }
}

#[test]
fn suite_lists_every_system() {
    let names: Vec<String> = isolat::bench::suite_files(&dir())
        .unwrap()
        .iter()
        .map(|p| p.file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    let want: Vec<&str> = FILES.iter().map(|f| f.0).collect();
    assert_eq!(names, want);
}
