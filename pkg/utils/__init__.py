# Utils package for oplog
