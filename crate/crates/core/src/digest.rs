//! Content digests over canonical JSON.

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Hex SHA-256 of the JSON serialization of `value`.
pub fn sha256_json<T: Serialize + ?Sized>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("serializable value");
    hex::encode(Sha256::digest(&bytes))
}

/// First 16 hex characters of [`sha256_json`].
pub fn short_digest<T: Serialize + ?Sized>(value: &T) -> String {
    sha256_json(value)[..16].to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_and_sensitive() {
        assert_eq!(short_digest(&[1, 2, 3]), short_digest(&vec![1, 2, 3]));
        assert_ne!(short_digest(&[1, 2, 3]), short_digest(&[1, 2, 4]));
        assert_eq!(sha256_json("x").len(), 64);
    }
}
