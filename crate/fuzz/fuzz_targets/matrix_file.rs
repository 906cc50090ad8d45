#![no_main]
use libfuzzer_sys::fuzz_target;
use volcert::homology::smith_normal_form;
use volcert::matrix_file::parse_matrix_file;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(file) = parse_matrix_file(text) {
        let again = parse_matrix_file(&file.to_text()).expect("emitted matrix file parses");
        assert_eq!(again, file);
        // keep the decomposition cheap enough for the fuzzer
        if file.matrix.rows() <= 8 && file.matrix.cols() <= 8 {
            let s = smith_normal_form(&file.matrix);
            assert_eq!(s.u.mul(&file.matrix).unwrap().mul(&s.v).unwrap(), s.d);
        }
    }
});
