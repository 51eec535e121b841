use torelli_core::tensor::labute_graded_dims;
use torelli_core::Surface;

fn check(genus: usize, max_degree: usize) {
    let s = Surface::new(genus).unwrap();
    let dims = labute_graded_dims(genus, max_degree).unwrap();
    for d in 1..=max_degree {
        let b = s.labute_basis(d).unwrap();
        assert_eq!(b.len() as u64, dims[d - 1], "genus {genus} degree {d}");
    }
}

#[test]
fn genus_two_bases_match_hilbert_series() {
    check(2, 6);
}

#[test]
fn genus_three_bases_match_hilbert_series() {
    check(3, 5);
}

#[test]
fn genus_four_bases_match_hilbert_series() {
    check(4, 5);
}
