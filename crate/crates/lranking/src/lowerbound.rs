//! Lower-bound gadget generators (stub).
