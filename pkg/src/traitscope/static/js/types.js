// Wire-format types for TreeDocument v1 and the JSON API.
export {};
