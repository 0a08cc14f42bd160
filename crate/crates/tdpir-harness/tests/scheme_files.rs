//! Scheme file round trips through a real directory: design + code files,
//! chunk metadata, base-code files, and a retrieval against a scheme loaded
//! back from disk.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tdpir::basecodes::{rs_full, same_codeword_set};
use tdpir::design::td_affine;
use tdpir::ff::FieldSpec;
use tdpir::inccode::code_of_design;
use tdpir::linalg::row_space_equal;
use tdpir::pir::PirScheme;
use tdpir_harness::chunk::DbMeta;
use tdpir_harness::scheme_io::{
    load_scheme, read_base_code, read_meta, write_base_code, write_meta, write_scheme,
};

#[test]
fn scheme_roundtrip_and_retrieval() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("affine3").to_str().unwrap().to_string();

    let f3 = FieldSpec::new(3, 1).unwrap();
    let design = td_affine(2, &f3).unwrap();
    let code = code_of_design(&design, &f3).unwrap();
    let scheme = PirScheme::new(code.clone(), design.clone()).unwrap();
    write_scheme(&prefix, &design, &code).unwrap();

    let loaded = load_scheme(&prefix).unwrap();
    assert_eq!(loaded.k(), scheme.k());
    assert_eq!(loaded.ell(), scheme.ell());
    assert_eq!(loaded.code().sigma(), scheme.code().sigma());
    assert!(row_space_equal(loaded.code().generator(), scheme.code().generator()).unwrap());

    // The loaded scheme retrieves correctly.
    let db: Vec<_> = (0..loaded.k())
        .map(|i| f3.felt(i as u32 % 3).unwrap())
        .collect();
    let shares = loaded.setup(&db).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for (i, &expect) in db.iter().enumerate() {
        assert_eq!(loaded.retrieve_local(&shares, i, &mut rng).unwrap(), expect);
    }
}

#[test]
fn meta_and_base_code_files() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("meta").to_str().unwrap().to_string();
    let meta = DbMeta {
        k: 37,
        m: 12,
        record_bytes: 4,
        file_len: 145,
    };
    write_meta(&prefix, &meta).unwrap();
    assert_eq!(read_meta(&prefix).unwrap(), meta);

    let f4 = FieldSpec::new(2, 2).unwrap();
    let code = rs_full(2, &f4).unwrap();
    let path = dir.path().join("rs2.code");
    write_base_code(&path, &code).unwrap();
    let back = read_base_code(&path).unwrap();
    assert_eq!((back.len(), back.k()), (code.len(), code.k()));
    assert!(same_codeword_set(&back, &code).unwrap());
}

#[test]
fn mismatched_code_and_design_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a").to_str().unwrap().to_string();
    let b = dir.path().join("b").to_str().unwrap().to_string();

    let f3 = FieldSpec::new(3, 1).unwrap();
    let d3 = td_affine(2, &f3).unwrap();
    let c3 = code_of_design(&d3, &f3).unwrap();
    write_scheme(&a, &d3, &c3).unwrap();

    let f2 = FieldSpec::new(2, 1).unwrap();
    let d2 = td_affine(2, &FieldSpec::new(2, 2).unwrap()).unwrap();
    let c2 = code_of_design(&d2, &f2).unwrap();
    write_scheme(&b, &d2, &c2).unwrap();

    // Cross the files: a's design with b's code.
    std::fs::copy(format!("{b}.ic"), format!("{a}.ic")).unwrap();
    assert!(load_scheme(&a).is_err());
}
