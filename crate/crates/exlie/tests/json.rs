mod common;

use common::gf;
use exlie::json::{decode_algebra, encode_algebra, parse_coords, AlgebraJson};
use exlie::{CartanType, LieAlgebra};
use exlie_field::{Field, Rationals};

#[test]
fn algebras_round_trip_through_json() {
    for q in [4, 5, 9] {
        let f = gf(q);
        let l = LieAlgebra::chevalley(CartanType::G2, f.clone()).unwrap();
        let text = serde_json::to_string(&encode_algebra(&l)).unwrap();
        let file: AlgebraJson = serde_json::from_str(&text).unwrap();
        assert_eq!(file.cartan_type.as_deref(), Some("G2"));
        let back = decode_algebra(f, &file).unwrap();
        assert_eq!(back.dim(), l.dim());
        assert_eq!(back.cartan_type(), Some(CartanType::G2));
        for i in 0..l.dim() {
            for j in 0..l.dim() {
                assert_eq!(back.basis_bracket(i, j), l.basis_bracket(i, j), "gf({q}) [{i},{j}]");
            }
        }
    }
}

#[test]
fn rational_tables_round_trip() {
    let l = LieAlgebra::chevalley(CartanType::A(2), Rationals).unwrap();
    let back = decode_algebra(Rationals, &encode_algebra(&l)).unwrap();
    assert!(back.verify_lie().passed());
    assert_eq!(back.basis_bracket(0, 1), l.basis_bracket(0, 1));
}

#[test]
fn field_mismatch_is_rejected() {
    let l = LieAlgebra::chevalley(CartanType::G2, gf(5)).unwrap();
    let file = encode_algebra(&l);
    assert!(decode_algebra(gf(7), &file).is_err());
    let mut short = file.clone();
    short.labels.pop();
    assert!(decode_algebra(gf(5), &short).is_err());
}

#[test]
fn coordinates_parse_with_commas_or_spaces() {
    let f = gf(5);
    assert_eq!(parse_coords(&f, "1, 2 3,4").unwrap(), vec![1, 2, 3, 4]);
    assert!(parse_coords(&f, "1,x").is_err());
    assert_eq!(
        parse_coords(&Rationals, "1/2").unwrap(),
        vec![Rationals.div(&Rationals.one(), &Rationals.from_i64(2)).unwrap()]
    );
}
