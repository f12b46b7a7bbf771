use chebgraph::ff::{cheb_eval_u64, FieldCtx, PrimePower};
use chebgraph::structure::{is_involution, is_permutation};

#[test]
fn criteria_match_composition() {
    let mut involutions = 0;
    for q in (2..=128u64).filter(|&q| PrimePower::from_order(q).is_ok()) {
        let f = FieldCtx::new(PrimePower::from_order(q).unwrap());
        let elems: Vec<_> = f.elements().collect();
        for n in 1..=300u64 {
            let image: Vec<_> = elems.iter().map(|a| cheb_eval_u64(&f, n, a)).collect();
            let mut codes: Vec<u128> = image.iter().map(|x| f.encode(x)).collect();
            codes.sort_unstable();
            codes.dedup();
            assert_eq!(is_permutation(n, q).unwrap(), codes.len() == elems.len(), "n={n} q={q}");
            let inv = elems.iter().zip(&image).all(|(a, b)| cheb_eval_u64(&f, n, b) == *a);
            assert_eq!(is_involution(n, q).unwrap(), inv, "n={n} q={q}");
            involutions += usize::from(inv && n > 1);
        }
    }
    assert!(involutions > 50, "only {involutions} nontrivial involutions seen");
}
