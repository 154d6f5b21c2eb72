# API Module
# 명령 실행 계층 (commands.py)
