# Numerical core: linear algebra substrate, Jordan forms, matrix functions
