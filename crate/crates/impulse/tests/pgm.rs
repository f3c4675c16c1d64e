use impulse::pgm::{load, read_pgm, save, write_pgm, PgmError};
use impulse_core::Image;
use proptest::prelude::*;

fn image() -> impl Strategy<Value = Image> {
    (1usize..40, 1usize..40).prop_flat_map(|(w, h)| {
        proptest::collection::vec(any::<u8>(), w * h).prop_map(move |px| Image::new(w, h, px).unwrap())
    })
}

proptest! {
    #[test]
    fn round_trip_is_bit_exact(img in image()) {
        let bytes = write_pgm(&img);
        let header = format!("P5\n{} {}\n255\n", img.width(), img.height());
        prop_assert_eq!(bytes.len(), header.len() + img.len());
        prop_assert!(bytes.starts_with(header.as_bytes()));
        prop_assert_eq!(read_pgm(&bytes).unwrap(), img);
    }

    #[test]
    fn comments_and_spacing_are_accepted(img in image()) {
        let mut bytes = format!("P5 # made by hand\n# width next\n{}\t{}\r\n255\n", img.width(), img.height())
            .into_bytes();
        bytes.extend_from_slice(img.pixels());
        prop_assert_eq!(read_pgm(&bytes).unwrap(), img);
    }

    #[test]
    fn truncated_raster_is_rejected(img in image(), cut in 1usize..10) {
        let bytes = write_pgm(&img);
        let keep = bytes.len() - cut.min(img.len());
        let truncated = matches!(read_pgm(&bytes[..keep]), Err(PgmError::Truncated { .. }));
        prop_assert!(truncated);
    }
}

#[test]
fn file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.pgm");
    let img = Image::new(3, 2, vec![0, 1, 2, 253, 254, 255]).unwrap();
    save(&path, &img).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), write_pgm(&img));
    assert_eq!(load(&path).unwrap(), img);
}

#[test]
fn malformed_headers_are_rejected() {
    assert!(matches!(read_pgm(b"P2\n1 1\n255\n\x00"), Err(PgmError::Format(_))));
    assert!(matches!(read_pgm(b"P5\n1 1\n65535\n\x00\x00"), Err(PgmError::UnsupportedMaxval(65535))));
    assert!(read_pgm(b"P5\n0 1\n255\n").is_err());
    assert!(read_pgm(b"P5\n1").is_err());
    assert!(matches!(load("/nonexistent/definitely.pgm"), Err(PgmError::Io(_))));
}
