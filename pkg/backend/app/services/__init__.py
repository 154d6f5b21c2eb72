# Services Module
# netmodel -> dynamics -> classify / equilibria -> sweep 순서로 의존
