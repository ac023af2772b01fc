from .entries import (
    CatalogEntry,
    CatalogReport,
    EntryReport,
    catalog_document,
    entry_ids,
    export_entry,
    get_entry,
    list_entries,
    sampling_plan,
    semisimple_h2,
    verify_all,
    verify_entry,
)

__all__ = [
    "CatalogEntry",
    "CatalogReport",
    "EntryReport",
    "catalog_document",
    "entry_ids",
    "export_entry",
    "get_entry",
    "list_entries",
    "sampling_plan",
    "semisimple_h2",
    "verify_all",
    "verify_entry",
]
