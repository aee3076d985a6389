# Config package for oplog
