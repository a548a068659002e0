//! JSON fragments shared between subcommand reports.

use serde_json::json;

use imp_core::csp::{Classification, Tractability};

pub fn classification_json(cls: &Classification) -> serde_json::Value {
    let (class, hard_level) = match cls.tractability {
        Tractability::MajorityTract => ("majority", None),
        Tractability::MinTract => ("min", None),
        Tractability::MaxTract => ("max", None),
        Tractability::MinorityTract => ("minority", None),
        Tractability::Hard(k) => ("hard", Some(k)),
        Tractability::OpenImp1 => ("open-imp1", None),
    };
    json!({
        "polymorphisms": cls.polymorphisms.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>(),
        "class": class,
        "hard_level": hard_level,
    })
}
