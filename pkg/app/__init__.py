"""matfn: real logarithms and roots of real matrices."""
