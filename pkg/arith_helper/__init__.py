# arith_helper: exact arithmetic and integer linear algebra used by modules/
