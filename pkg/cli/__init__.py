# CLI package for oplog
