"""subset-syzygy"""
