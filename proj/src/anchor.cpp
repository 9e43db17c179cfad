namespace opecalc { int _lib_anchor = 0; }
