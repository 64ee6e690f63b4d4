//! Encode two outer rows, flip a couple of bits, decode with a group plan.
//! Mirrors the quick-start snippet in the workspace README.

use gcdec_core::{Field, GcCode, NestedBinaryCode, RsCode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rows = vec![0b11, 0b1100, 0b101, 0b10101010, 0b11001100, 0b11110000];
    let inner = NestedBinaryCode::new(rows, 2, 3, 8, None)?;

    let field = Field::with_default_modulus(3)?;
    let code = GcCode::new(
        vec![RsCode::new(field.clone(), 7, 5)?, RsCode::new(field, 7, 2)?],
        inner,
    )?;

    let a = code.encode_outer(&[vec![1, 5, 2, 0, 7], vec![3, 6]])?;
    let mut m = code.matrix_from_symbols(&a);
    m.flip(4, 1);
    m.flip(0, 6);

    let plan = code.plan_groups();
    let report = code.decode_grouped(&m, &plan)?;
    assert_eq!(report.estimate, a);
    assert!(report.is_clean());

    println!(
        "recovered both rows; inner decodes performed {}, skipped {}",
        report.inner_performed, report.inner_skipped
    );
    Ok(())
}
