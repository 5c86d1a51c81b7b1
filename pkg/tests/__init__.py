# monge-rolling-verify tests
